// Threshold-selection rules. Every policy picks a threshold tau from the
// instance (full information) or from samples, then stops at the first
// success at or after tau.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lastsuccess/core.hpp"
#include "lastsuccess/statistics.hpp"

namespace lastsuccess {

/// Per-trial estimate used by the estimated-odds rule: alpha0 for a
/// sample 0, alpha1 for a sample 1.
struct EstimationParams {
  double alpha0 = 0.0;
  double alpha1 = 1.0;

  void validate() const;
};

struct MultiSampleParams {
  double epsilon = 0.25;

  /// Requires 0 < epsilon < 1/2.
  void validate() const;
};

/// Full-information odds rule: smallest t in [n] with sum_{i>t} r_i < 1.
/// A suffix containing an infinite odd never satisfies the test.
ThresholdIndex bruss_threshold(const OddsSummary& summary);
ThresholdIndex bruss_threshold_from_odds(std::span<const double> odds);

/// Odds rule applied to phat_i = alpha1 if Y_i = 1 else alpha0.
ThresholdIndex estimated_bruss_threshold(std::span<const std::uint8_t> row,
                                         const EstimationParams& params);

/// Last sample success; 1 when the row has none.
ThresholdIndex fls_threshold(std::span<const std::uint8_t> row);

/// One past the second-last sample success; 1 with fewer than two successes.
ThresholdIndex asls_threshold(std::span<const std::uint8_t> row);

/// Last sample success or the index after it, each with probability 1/2.
/// The successor of a success at n is n+1 (never stop). {1: 1} when the
/// row has no success.
ThresholdDistribution flsr_threshold_distribution(std::span<const std::uint8_t> row);

/// Smallest i in [n] with Qhat_{i+1} >= 1/e + epsilon (Qhat_{n+1} = 1).
/// The comparison is made on counts, T_{i+1} >= m (1/e + epsilon).
ThresholdIndex multi_sample_threshold(const QHatStatistics& stats,
                                      const MultiSampleParams& params);

/// epsilon solving m = e / epsilon^4, capped at 0.499999 so the rule stays
/// defined for m <= 43.
double default_epsilon(std::size_t m);

enum class PolicyKind { fls, asls, flsr, estimated_bruss, multi_sample };

PolicyKind parse_policy_kind(std::string_view name);
std::string_view to_string(PolicyKind kind);

/// A sample-based policy together with its parameters. Single-sample
/// policies (FLS, ASLS, FLSR, estimated-odds) read only the first sample
/// sequence when given more than one.
struct PolicySpec {
  PolicyKind kind = PolicyKind::asls;
  EstimationParams estimation{};
  /// Multi-sample epsilon; default_epsilon(m) when unset.
  std::optional<double> epsilon;

  bool single_sample() const { return kind != PolicyKind::multi_sample; }
  MultiSampleParams multi_sample_params(std::size_t m) const;
};

/// Threshold distribution chosen by `policy` on the given samples.
ThresholdDistribution apply_policy(const PolicySpec& policy, const SampleMatrix& samples);

}  // namespace lastsuccess
