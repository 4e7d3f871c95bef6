#include "lastsuccess/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace lastsuccess {

std::string_view to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::exact: return "exact";
    case EvalMethod::oracle: return "oracle";
    case EvalMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

std::vector<double> exactly_one_success_profile(const Instance& instance) {
  const std::size_t n = instance.size();
  const auto probs = instance.probs();
  std::vector<double> one(n + 1, 0.0);
  double none = 1.0;  // P(no success in i+1..n)
  for (std::size_t i = n; i-- > 0;) {
    const double p = probs[i];
    one[i] = p * none + (1.0 - p) * one[i + 1];
    none *= 1.0 - p;
  }
  return one;
}

double threshold_win_prob(const Instance& instance, ThresholdIndex tau) {
  const std::size_t n = instance.size();
  if (tau.value < 1 || tau.value > n + 1) {
    throw std::invalid_argument("threshold outside [1, n+1]");
  }
  const auto probs = instance.probs();
  double one = 0.0;
  double none = 1.0;
  for (std::size_t i = n; i >= tau.value; --i) {
    const double p = probs[i - 1];
    one = p * none + (1.0 - p) * one;
    none *= 1.0 - p;
  }
  return one;
}

ThresholdDistribution fls_threshold_distribution(const Instance& instance) {
  const auto s = odds_summary(instance);
  const std::size_t n = instance.size();
  ThresholdDistribution d;
  // tau = 1 when the last sample success is at 1 or there is none
  d.add(ThresholdIndex{1}, s.q(2));
  for (std::size_t k = 2; k <= n; ++k) d.add(ThresholdIndex{k}, instance.p(k) * s.q(k + 1));
  return d;
}

ThresholdDistribution asls_threshold_distribution(const Instance& instance) {
  const auto s = odds_summary(instance);
  const auto w = exactly_one_success_profile(instance);
  const std::size_t n = instance.size();
  ThresholdDistribution d;
  d.add(ThresholdIndex{1}, s.q(1) + w[0]);
  // second-last success at k-1 and exactly one success in k..n
  for (std::size_t k = 2; k <= n; ++k) d.add(ThresholdIndex{k}, instance.p(k - 1) * w[k - 1]);
  return d;
}

ThresholdDistribution flsr_threshold_distribution_exact(const Instance& instance) {
  const auto s = odds_summary(instance);
  const std::size_t n = instance.size();
  ThresholdDistribution d;
  d.add(ThresholdIndex{1}, s.q(1));
  for (std::size_t k = 1; k <= n; ++k) {
    const double last_at_k = instance.p(k) * s.q(k + 1);
    d.add(ThresholdIndex{k}, 0.5 * last_at_k);
    d.add(ThresholdIndex{k + 1}, 0.5 * last_at_k);
  }
  return d;
}

namespace {

double expected_win(const std::vector<double>& profile, const ThresholdDistribution& dist) {
  double v = 0.0;
  for (const auto& [tau, mass] : dist.support()) v += mass * profile[tau.value - 1];
  return v;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

EvalResult policy_win_prob_exact(const Instance& instance, const ThresholdDistribution& dist) {
  dist.validate(instance.size(), 1e-9);
  const auto w = exactly_one_success_profile(instance);
  return EvalResult{clamp01(expected_win(w, dist)), EvalMethod::exact, 0.0, 0, 0};
}

EvalResult brute_force_win_prob(const Instance& instance, const SamplePolicy& policy,
                                std::size_t m) {
  const std::size_t n = instance.size();
  if (m == 0) throw std::invalid_argument("brute force needs m >= 1");
  if (n * m > kBruteForceMaxBits) {
    throw std::invalid_argument("brute force limited to n*m <= " +
                                std::to_string(kBruteForceMaxBits) + " sample bits");
  }
  const auto w = exactly_one_success_profile(instance);
  const auto probs = instance.probs();
  const std::size_t bits = n * m;
  const std::uint64_t outcomes = std::uint64_t{1} << bits;

  double total = 0.0;
  std::vector<std::uint8_t> cells(bits);
  for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
    double prob = 1.0;
    for (std::size_t b = 0; b < bits && prob != 0.0; ++b) {
      const std::uint8_t y = (mask >> b) & 1u;
      cells[b] = y;
      const double p = probs[b % n];
      prob *= y ? p : 1.0 - p;
    }
    if (prob == 0.0) continue;
    const SampleMatrix samples(m, n, cells);
    total += prob * expected_win(w, policy(samples));
  }
  return EvalResult{clamp01(total), EvalMethod::oracle, 0.0, 0, 0};
}

EvalResult brute_force_win_prob(const Instance& instance, const PolicySpec& policy,
                                std::size_t m) {
  return brute_force_win_prob(
      instance, [&](const SampleMatrix& s) { return apply_policy(policy, s); }, m);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Last and second-last success positions (0 = absent) of one sample
// sequence, scanning from the back until two successes are found.
std::pair<std::size_t, std::size_t> draw_top_two(std::span<const double> probs,
                                                 Engine& engine) {
  std::size_t last = 0;
  for (std::size_t i = probs.size(); i >= 1; --i) {
    if (bernoulli(engine, probs[i - 1])) {
      if (last != 0) return {last, i};
      last = i;
    }
  }
  return {last, 0};
}

// T_{n+1} = m and T_i | T_{i+1} ~ Binomial(T_{i+1}, 1 - p_i): the counts of
// sample sequences with no success in i..n, without drawing the sequences.
QHatStatistics draw_qhat(std::span<const double> probs, std::size_t m, Engine& engine) {
  const std::size_t n = probs.size();
  std::vector<std::uint64_t> counts(n + 1);
  counts[n] = m;
  for (std::size_t i = n; i >= 1; --i) {
    const double keep = 1.0 - probs[i - 1];
    const auto prev = static_cast<std::int64_t>(counts[i]);
    std::int64_t t;
    if (keep >= 1.0 || prev == 0) {
      t = prev;
    } else if (keep <= 0.0) {
      t = 0;
    } else {
      std::binomial_distribution<std::int64_t> bin(prev, keep);
      t = bin(engine);
    }
    counts[i - 1] = static_cast<std::uint64_t>(t);
  }
  return QHatStatistics(m, std::move(counts));
}

}  // namespace

EvalResult monte_carlo_win_prob(const Instance& instance, const PolicySpec& policy,
                                const MonteCarloOptions& options) {
  if (options.replicates == 0) throw std::invalid_argument("replicates must be positive");
  if (options.m == 0) throw std::invalid_argument("m must be positive");
  const std::size_t n = instance.size();
  const auto probs = instance.probs();
  const auto w = exactly_one_success_profile(instance);
  MultiSampleParams ms_params{};
  if (policy.kind == PolicyKind::multi_sample) ms_params = policy.multi_sample_params(options.m);
  if (policy.kind == PolicyKind::estimated_bruss) policy.estimation.validate();

  auto replicate = [&](std::uint64_t k) -> double {
    Engine engine(derive_seed(options.seed, k));
    switch (policy.kind) {
      case PolicyKind::fls: {
        const auto [last, second] = draw_top_two(probs, engine);
        (void)second;
        return w[(last == 0 ? 1 : last) - 1];
      }
      case PolicyKind::asls: {
        const auto [last, second] = draw_top_two(probs, engine);
        const std::size_t tau = (last == 0 || second == 0) ? 1 : second + 1;
        return w[tau - 1];
      }
      case PolicyKind::flsr: {
        const auto [last, second] = draw_top_two(probs, engine);
        (void)second;
        if (last == 0) return w[0];
        return 0.5 * w[last - 1] + 0.5 * w[last];
      }
      case PolicyKind::estimated_bruss: {
        std::vector<std::uint8_t> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = bernoulli(engine, probs[i]) ? 1 : 0;
        return w[estimated_bruss_threshold(row, policy.estimation).value - 1];
      }
      case PolicyKind::multi_sample: {
        const auto stats = draw_qhat(probs, options.m, engine);
        return w[multi_sample_threshold(stats, ms_params).value - 1];
      }
    }
    return 0.0;
  };

  const std::size_t reps = options.replicates;
  std::vector<double> values(reps);
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    for (std::size_t k = 0; k < reps; ++k) values[k] = replicate(k);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(reps, begin + chunk);
      pool.emplace_back([&, begin, end] {
        for (std::size_t k = begin; k < end; ++k) values[k] = replicate(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  const double mean = pairwise_sum(values) / static_cast<double>(reps);
  double ci = 0.0;
  if (reps > 1) {
    std::vector<double> sq(reps);
    for (std::size_t k = 0; k < reps; ++k) sq[k] = (values[k] - mean) * (values[k] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(reps - 1);
    ci = 1.96 * std::sqrt(var / static_cast<double>(reps));
  }
  return EvalResult{clamp01(mean), EvalMethod::monte_carlo, ci, reps, options.seed};
}

std::size_t critical_index(const OddsSummary& summary) {
  const std::size_t n = summary.odds.size();
  for (std::size_t i = 1; i <= n; ++i) {
    if (summary.q(i + 1) >= 1.0 / std::numbers::e) return i;
  }
  return n;
}

double DeviationTrace::max_deviation() const {
  if (dvalues.empty()) return -std::numeric_limits<double>::infinity();
  return *std::max_element(dvalues.begin(), dvalues.end());
}

DeviationTrace deviation_trace(const OddsSummary& summary, const QHatStatistics& stats) {
  const std::size_t n = summary.odds.size();
  if (stats.n() != n) throw std::invalid_argument("deviation_trace: dimension mismatch");
  DeviationTrace trace;
  trace.istar = critical_index(summary);
  for (std::size_t k = trace.istar + 1; k <= n; ++k) {
    const double q = summary.q(k);
    if (q <= 0.0) continue;
    trace.indices.push_back(k);
    trace.dvalues.push_back((q - stats.q(k)) / q);
  }
  return trace;
}

DeviationTrace deviation_trace(const Instance& instance, const SampleMatrix& samples) {
  if (samples.cols() != instance.size()) {
    throw std::invalid_argument("deviation_trace: samples do not match instance");
  }
  return deviation_trace(odds_summary(instance), qhat_statistics(samples));
}

}  // namespace lastsuccess
