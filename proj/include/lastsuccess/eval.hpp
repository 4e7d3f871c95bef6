// Winning-probability evaluation: closed-form threshold laws, exhaustive
// enumeration over sample outcomes, and Rao-Blackwellized Monte Carlo.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "lastsuccess/core.hpp"
#include "lastsuccess/policies.hpp"
#include "lastsuccess/statistics.hpp"

namespace lastsuccess {

enum class EvalMethod { exact, oracle, monte_carlo };
std::string_view to_string(EvalMethod method);

struct EvalResult {
  double estimate = 0.0;
  EvalMethod method = EvalMethod::exact;
  /// 1.96 sd / sqrt(replicates); zero unless method is monte_carlo.
  double ci_halfwidth = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

/// W(tau) = P(exactly one success among X_tau..X_n) for tau = 1..n+1,
/// returned with W(tau) at element tau-1 and W(n+1) = 0. Certain successes
/// (p = 1) are handled exactly.
std::vector<double> exactly_one_success_profile(const Instance& instance);

/// Winning probability of "stop at the first success from tau".
double threshold_win_prob(const Instance& instance, ThresholdIndex tau);

/// Law of the FLS threshold under one sample sequence.
ThresholdDistribution fls_threshold_distribution(const Instance& instance);
/// Law of the ASLS threshold under one sample sequence.
ThresholdDistribution asls_threshold_distribution(const Instance& instance);
/// Law of the FLSR threshold, marginalizing both the sample and the coin.
ThresholdDistribution flsr_threshold_distribution_exact(const Instance& instance);

/// sum_tau P(tau) W(tau).
EvalResult policy_win_prob_exact(const Instance& instance, const ThresholdDistribution& dist);

/// Any rule mapping a full sample matrix to a threshold law.
using SamplePolicy = std::function<ThresholdDistribution(const SampleMatrix&)>;

inline constexpr std::size_t kBruteForceMaxBits = 22;

/// Enumerates all 2^(n m) sample matrices. Throws std::invalid_argument when
/// n m exceeds kBruteForceMaxBits.
EvalResult brute_force_win_prob(const Instance& instance, const SamplePolicy& policy,
                                std::size_t m);
EvalResult brute_force_win_prob(const Instance& instance, const PolicySpec& policy,
                                std::size_t m);

struct MonteCarloOptions {
  std::size_t m = 1;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. The result does not
  /// depend on this value.
  unsigned threads = 1;
};

/// Each replicate draws the sample statistic the policy needs, picks a
/// threshold, and records W(threshold) exactly. Replicate k is seeded with
/// derive_seed(seed, k) and values are reduced by pairwise summation in
/// replicate order.
EvalResult monte_carlo_win_prob(const Instance& instance, const PolicySpec& policy,
                                const MonteCarloOptions& options);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

/// Relative deviations D_k = (Q_k - Qhat_k) / Q_k for k = first..n, where
/// first = istar + 1 and istar = min{i : Q_{i+1} >= 1/e}. Indices with
/// Q_k = 0 are skipped.
struct DeviationTrace {
  std::size_t istar = 1;
  std::vector<std::size_t> indices;
  std::vector<double> dvalues;

  double max_deviation() const;
};

DeviationTrace deviation_trace(const Instance& instance, const SampleMatrix& samples);
DeviationTrace deviation_trace(const OddsSummary& summary, const QHatStatistics& stats);

/// min{i in [n] : Q_{i+1} >= 1/e}, with Q_{n+1} = 1.
std::size_t critical_index(const OddsSummary& summary);

}  // namespace lastsuccess
