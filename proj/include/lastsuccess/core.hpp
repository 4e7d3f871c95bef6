// Data model for the last-success problem: instances, odds, samples and
// realized trial sequences, plus the seeded randomness contract shared by
// every stochastic routine in the library.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace lastsuccess {

using Engine = std::mt19937_64;

/// Success probabilities p_1..p_n of independent Bernoulli trials.
/// Indices in the public API are 1-based (trial 1 is probs()[0]).
class Instance {
 public:
  explicit Instance(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  /// p_i for 1-based i.
  double p(std::size_t i) const { return probs_[i - 1]; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<double> probs_;
};

/// Odds r_i = p_i/(1-p_i) (+inf when p_i = 1), their total R, and the
/// no-success products Q_i = prod_{k>=i}(1-p_k).
struct OddsSummary {
  std::vector<double> odds;
  double total = 0.0;
  double no_success = 1.0;
  /// Q_1..Q_{n+1}; element i-1 holds Q_i and the last element is 1.
  std::vector<double> suffix_no_success;

  /// Q_i for 1-based i in [1, n+1].
  double q(std::size_t i) const { return suffix_no_success[i - 1]; }
};

OddsSummary odds_summary(const Instance& instance);

/// m sample sequences of length n, stored row-major; row j is the j-th
/// sample sequence (Y_{1,j}, ..., Y_{n,j}).
class SampleMatrix {
 public:
  SampleMatrix(std::size_t m, std::size_t n);
  SampleMatrix(std::size_t m, std::size_t n, std::vector<std::uint8_t> bits);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::span<const std::uint8_t> row(std::size_t j) const {
    return {bits_.data() + j * n_, n_};
  }
  std::span<std::uint8_t> row(std::size_t j) { return {bits_.data() + j * n_, n_}; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

/// One realized sequence X_1..X_n.
struct Realization {
  std::vector<std::uint8_t> values;
};

/// Threshold tau in [1, n+1]: stop at the first success at or after tau.
/// n+1 means the policy never stops and therefore always loses.
struct ThresholdIndex {
  std::size_t value = 1;

  bool never_stops(std::size_t n) const { return value == n + 1; }
  friend auto operator<=>(const ThresholdIndex&, const ThresholdIndex&) = default;
};

/// Probability mass over thresholds induced by a policy's dependence on
/// the samples and on its own coin flips.
class ThresholdDistribution {
 public:
  ThresholdDistribution() = default;
  static ThresholdDistribution point(ThresholdIndex tau);

  void add(ThresholdIndex tau, double mass);
  void add(const ThresholdDistribution& other, double weight);

  double mass(ThresholdIndex tau) const;
  double total() const;
  const std::map<ThresholdIndex, double>& support() const { return support_; }

  /// Throws std::invalid_argument unless masses are non-negative, sum to 1
  /// within `tol`, and every threshold lies in [1, n+1].
  void validate(std::size_t n, double tol = 1e-12) const;

 private:
  std::map<ThresholdIndex, double> support_;
};

/// Seed for replicate `k` of an experiment with master seed `master`.
/// Depends only on (master, k), never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Engine& engine, double p) { return uniform01(engine) < p; }

SampleMatrix draw_samples(const Instance& instance, std::size_t m, std::uint64_t seed);
Realization draw_realization(const Instance& instance, std::uint64_t seed);

/// 1-based index of the last 1 in `row`; 0 when the row has no success.
std::size_t last_success_index(std::span<const std::uint8_t> row);

}  // namespace lastsuccess
