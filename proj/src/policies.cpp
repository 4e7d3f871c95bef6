#include "lastsuccess/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lastsuccess {

void EstimationParams::validate() const {
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0) || !(alpha1 >= 0.0 && alpha1 <= 1.0)) {
    throw std::invalid_argument("alpha0 and alpha1 must lie in [0, 1]");
  }
}

void MultiSampleParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  }
}

ThresholdIndex bruss_threshold_from_odds(std::span<const double> odds) {
  const std::size_t n = odds.size();
  // Walk t = n, n-1, ... keeping S = sum_{i>t} r_i; the admissible set is an
  // up-set, so the answer is one past the first t (from the right) that fails.
  double suffix = 0.0;
  for (std::size_t t = n; t >= 1; --t) {
    if (!(suffix < 1.0)) return ThresholdIndex{t + 1};
    suffix += odds[t - 1];
  }
  return ThresholdIndex{1};
}

ThresholdIndex bruss_threshold(const OddsSummary& summary) {
  return bruss_threshold_from_odds(summary.odds);
}

ThresholdIndex estimated_bruss_threshold(std::span<const std::uint8_t> row,
                                         const EstimationParams& params) {
  params.validate();
  auto to_odds = [](double p) {
    return p == 1.0 ? std::numeric_limits<double>::infinity() : p / (1.0 - p);
  };
  const double r0 = to_odds(params.alpha0);
  const double r1 = to_odds(params.alpha1);
  std::vector<double> odds(row.size());
  std::transform(row.begin(), row.end(), odds.begin(),
                 [&](std::uint8_t y) { return y ? r1 : r0; });
  return bruss_threshold_from_odds(odds);
}

ThresholdIndex fls_threshold(std::span<const std::uint8_t> row) {
  const auto last = last_success_index(row);
  return ThresholdIndex{last == 0 ? 1 : last};
}

ThresholdIndex asls_threshold(std::span<const std::uint8_t> row) {
  const auto last = last_success_index(row);
  if (last <= 1) return ThresholdIndex{1};
  const auto second = last_success_index(row.first(last - 1));
  return ThresholdIndex{second == 0 ? 1 : second + 1};
}

ThresholdDistribution flsr_threshold_distribution(std::span<const std::uint8_t> row) {
  const auto last = last_success_index(row);
  if (last == 0) return ThresholdDistribution::point(ThresholdIndex{1});
  ThresholdDistribution d;
  d.add(ThresholdIndex{last}, 0.5);
  d.add(ThresholdIndex{last + 1}, 0.5);
  return d;
}

ThresholdIndex multi_sample_threshold(const QHatStatistics& stats,
                                      const MultiSampleParams& params) {
  params.validate();
  const double cutoff =
      static_cast<double>(stats.m()) * (1.0 / std::numbers::e + params.epsilon);
  const std::size_t n = stats.n();
  for (std::size_t i = 1; i <= n; ++i) {
    if (static_cast<double>(stats.t(i + 1)) >= cutoff) return ThresholdIndex{i};
  }
  // unreachable: T_{n+1} = m > m (1/e + epsilon) for epsilon < 1 - 1/e
  return ThresholdIndex{n};
}

double default_epsilon(std::size_t m) {
  if (m == 0) throw std::invalid_argument("default_epsilon: m must be positive");
  const double eps = std::pow(std::numbers::e / static_cast<double>(m), 0.25);
  return std::min(eps, 0.499999);
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "fls") return PolicyKind::fls;
  if (name == "asls") return PolicyKind::asls;
  if (name == "flsr") return PolicyKind::flsr;
  if (name == "estimated-bruss") return PolicyKind::estimated_bruss;
  if (name == "multi-sample") return PolicyKind::multi_sample;
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::fls: return "fls";
    case PolicyKind::asls: return "asls";
    case PolicyKind::flsr: return "flsr";
    case PolicyKind::estimated_bruss: return "estimated-bruss";
    case PolicyKind::multi_sample: return "multi-sample";
  }
  return "?";
}

MultiSampleParams PolicySpec::multi_sample_params(std::size_t m) const {
  MultiSampleParams params{epsilon ? *epsilon : default_epsilon(m)};
  params.validate();
  return params;
}

ThresholdDistribution apply_policy(const PolicySpec& policy, const SampleMatrix& samples) {
  const auto first = samples.row(0);
  switch (policy.kind) {
    case PolicyKind::fls: return ThresholdDistribution::point(fls_threshold(first));
    case PolicyKind::asls: return ThresholdDistribution::point(asls_threshold(first));
    case PolicyKind::flsr: return flsr_threshold_distribution(first);
    case PolicyKind::estimated_bruss:
      return ThresholdDistribution::point(estimated_bruss_threshold(first, policy.estimation));
    case PolicyKind::multi_sample:
      return ThresholdDistribution::point(multi_sample_threshold(
          qhat_statistics(samples), policy.multi_sample_params(samples.rows())));
  }
  throw std::logic_error("unhandled policy kind");
}

}  // namespace lastsuccess
