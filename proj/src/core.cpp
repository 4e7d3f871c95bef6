#include "lastsuccess/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lastsuccess {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Instance::Instance(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("instance needs at least one trial");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("success probability p_" + std::to_string(i + 1) +
                                  " outside [0, 1]");
    }
  }
}

OddsSummary odds_summary(const Instance& instance) {
  const std::size_t n = instance.size();
  const auto probs = instance.probs();
  constexpr double inf = std::numeric_limits<double>::infinity();

  OddsSummary s;
  s.odds.resize(n);
  s.suffix_no_success.assign(n + 1, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = probs[i];
    s.odds[i] = p == 1.0 ? inf : p / (1.0 - p);
    total += s.odds[i];
  }
  s.total = total;
  for (std::size_t i = n; i-- > 0;) {
    s.suffix_no_success[i] = s.suffix_no_success[i + 1] * (1.0 - probs[i]);
  }
  s.no_success = s.suffix_no_success[0];
  return s;
}

SampleMatrix::SampleMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), bits_(m * n, 0) {
  if (m == 0 || n == 0) throw std::invalid_argument("sample matrix needs m >= 1 and n >= 1");
}

SampleMatrix::SampleMatrix(std::size_t m, std::size_t n, std::vector<std::uint8_t> bits)
    : m_(m), n_(n), bits_(std::move(bits)) {
  if (m == 0 || n == 0) throw std::invalid_argument("sample matrix needs m >= 1 and n >= 1");
  if (bits_.size() != m * n) throw std::invalid_argument("sample matrix size mismatch");
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("sample entries must be 0 or 1");
  }
}

ThresholdDistribution ThresholdDistribution::point(ThresholdIndex tau) {
  ThresholdDistribution d;
  d.add(tau, 1.0);
  return d;
}

void ThresholdDistribution::add(ThresholdIndex tau, double mass) {
  if (mass == 0.0) return;
  support_[tau] += mass;
}

void ThresholdDistribution::add(const ThresholdDistribution& other, double weight) {
  for (const auto& [tau, mass] : other.support_) add(tau, weight * mass);
}

double ThresholdDistribution::mass(ThresholdIndex tau) const {
  auto it = support_.find(tau);
  return it == support_.end() ? 0.0 : it->second;
}

double ThresholdDistribution::total() const {
  double t = 0.0;
  for (const auto& [tau, mass] : support_) t += mass;
  return t;
}

void ThresholdDistribution::validate(std::size_t n, double tol) const {
  for (const auto& [tau, mass] : support_) {
    if (tau.value < 1 || tau.value > n + 1) {
      throw std::invalid_argument("threshold " + std::to_string(tau.value) +
                                  " outside [1, n+1]");
    }
    if (mass < 0.0) throw std::invalid_argument("negative threshold mass");
  }
  if (std::abs(total() - 1.0) > tol) {
    throw std::invalid_argument("threshold masses do not sum to 1");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64(splitmix64(master) ^ splitmix64(~k));
}

SampleMatrix draw_samples(const Instance& instance, std::size_t m, std::uint64_t seed) {
  const std::size_t n = instance.size();
  SampleMatrix samples(m, n);
  Engine engine(seed);
  const auto probs = instance.probs();
  for (std::size_t j = 0; j < m; ++j) {
    auto row = samples.row(j);
    for (std::size_t i = 0; i < n; ++i) row[i] = bernoulli(engine, probs[i]) ? 1 : 0;
  }
  return samples;
}

Realization draw_realization(const Instance& instance, std::uint64_t seed) {
  const auto samples = draw_samples(instance, 1, seed);
  const auto row = samples.row(0);
  return Realization{{row.begin(), row.end()}};
}

std::size_t last_success_index(std::span<const std::uint8_t> row) {
  for (std::size_t i = row.size(); i > 0; --i) {
    if (row[i - 1] != 0) return i;
  }
  return 0;
}

}  // namespace lastsuccess
