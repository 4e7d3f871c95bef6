#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lastsuccess/eval.hpp"
#include "lastsuccess/instances.hpp"
#include "oracles.hpp"

using namespace lastsuccess;

namespace {

// FLS on (1, 2/n, ..., 2/n): P(tau=1) W(1) + sum_k P(tau=k) W(k) written out
// in closed form per threshold.
double fls_one_then_uniform_sum(std::size_t n) {
  const double q = 1.0 - 2.0 / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  double total = std::pow(q, 2.0 * (nn - 1.0));
  for (std::size_t k = 2; k <= n; ++k) {
    total += 4.0 * static_cast<double>(n - k + 1) / (nn * nn) *
             std::pow(q, 2.0 * static_cast<double>(n - k));
  }
  return total;
}

std::vector<double> random_probs(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> p(n);
  for (auto& x : p) x = unif(gen);
  return p;
}

}  // namespace

TEST(ThresholdWinProb, Examples) {
  EXPECT_EQ(threshold_win_prob(Instance({1.0, 0.0}), ThresholdIndex{1}), 1.0);
  EXPECT_EQ(threshold_win_prob(Instance({1.0, 1.0}), ThresholdIndex{1}), 0.0);
  EXPECT_EQ(threshold_win_prob(Instance({1.0, 1.0}), ThresholdIndex{2}), 1.0);
  EXPECT_EQ(threshold_win_prob(Instance({0.3, 0.4}), ThresholdIndex{3}), 0.0);
  EXPECT_NEAR(threshold_win_prob(one_then_uniform(10), ThresholdIndex{7}), 0.4096, 1e-15);
  EXPECT_THROW(threshold_win_prob(Instance({0.3}), ThresholdIndex{3}), std::invalid_argument);
  EXPECT_THROW(threshold_win_prob(Instance({0.3}), ThresholdIndex{0}), std::invalid_argument);
}

TEST(ThresholdWinProb, MatchesDirectSumAndRecursion) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 2000; ++trial) {
    auto p = random_probs(gen, 1 + trial % 15);
    if (trial % 4 == 0) p[trial % p.size()] = 1.0;
    if (trial % 6 == 0) p[(trial / 6) % p.size()] = 0.0;
    const Instance inst(p);
    const auto s = odds_summary(inst);
    const auto w = exactly_one_success_profile(inst);
    const std::size_t n = p.size();
    for (std::size_t tau = 1; tau <= n + 1; ++tau) {
      const double got = threshold_win_prob(inst, ThresholdIndex{tau});
      ASSERT_EQ(got, w[tau - 1]);
      ASSERT_NEAR(got, tau <= n ? oracle::direct_sum_win_prob(p, tau) : 0.0, 1e-12);
      if (tau <= n) {
        const double rec = p[tau - 1] * s.q(tau + 1) + (1.0 - p[tau - 1]) * w[tau];
        ASSERT_NEAR(got, rec, 1e-12);
      }
    }
  }
}

TEST(FlsDistribution, Examples) {
  const auto a = fls_threshold_distribution(Instance({1.0, 0.0}));
  EXPECT_EQ(a.mass(ThresholdIndex{1}), 1.0);
  const auto b = fls_threshold_distribution(Instance({0.5, 0.5}));
  EXPECT_EQ(b.mass(ThresholdIndex{1}), 0.5);
  EXPECT_EQ(b.mass(ThresholdIndex{2}), 0.5);
  for (std::size_t n : {4u, 10u, 100u}) {
    const auto d = fls_threshold_distribution(one_then_uniform(n));
    const double q = 1.0 - 2.0 / static_cast<double>(n);
    EXPECT_NEAR(d.mass(ThresholdIndex{1}), std::pow(q, static_cast<double>(n - 1)), 1e-14);
  }
}

TEST(AslsDistribution, Examples) {
  EXPECT_EQ(asls_threshold_distribution(Instance({1.0, 1.0})).mass(ThresholdIndex{2}), 1.0);
  EXPECT_EQ(asls_threshold_distribution(Instance({1.0, 0.0})).mass(ThresholdIndex{1}), 1.0);
  const auto d = asls_threshold_distribution(Instance({0.5, 0.5}));
  EXPECT_DOUBLE_EQ(d.mass(ThresholdIndex{1}), 0.75);
  EXPECT_DOUBLE_EQ(d.mass(ThresholdIndex{2}), 0.25);
}

TEST(FlsrDistribution, Examples) {
  const auto a = flsr_threshold_distribution_exact(Instance({1.0, 0.0}));
  EXPECT_EQ(a.mass(ThresholdIndex{1}), 0.5);
  EXPECT_EQ(a.mass(ThresholdIndex{2}), 0.5);
  const auto b = flsr_threshold_distribution_exact(Instance({0.0, 1.0}));
  EXPECT_EQ(b.mass(ThresholdIndex{2}), 0.5);
  EXPECT_EQ(b.mass(ThresholdIndex{3}), 0.5);
  const auto c = flsr_threshold_distribution_exact(Instance({0.5}));
  EXPECT_DOUBLE_EQ(c.mass(ThresholdIndex{1}), 0.75);
  EXPECT_DOUBLE_EQ(c.mass(ThresholdIndex{2}), 0.25);
}

TEST(ThresholdDistributions, SumToOneWithinRange) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 3000; ++trial) {
    auto p = random_probs(gen, 1 + trial % 30);
    if (trial % 3 == 0) p[0] = 1.0;
    if (trial % 5 == 0) p.back() = 1.0;
    const Instance inst(p);
    ASSERT_NO_THROW(fls_threshold_distribution(inst).validate(p.size()));
    ASSERT_NO_THROW(asls_threshold_distribution(inst).validate(p.size()));
    ASSERT_NO_THROW(flsr_threshold_distribution_exact(inst).validate(p.size()));
  }
}

TEST(PolicyWinProbExact, Examples) {
  const auto a =
      policy_win_prob_exact(Instance({1.0, 0.0}), ThresholdDistribution::point(ThresholdIndex{1}));
  EXPECT_EQ(a.estimate, 1.0);
  EXPECT_EQ(a.method, EvalMethod::exact);
  EXPECT_EQ(a.ci_halfwidth, 0.0);

  const Instance single({0.2});
  EXPECT_NEAR(policy_win_prob_exact(single, flsr_threshold_distribution_exact(single)).estimate,
              0.18, 1e-15);
}

TEST(PolicyWinProbExact, FlsOnOneThenUniformMatchesPerThresholdSum) {
  for (std::size_t n : {4u, 10u, 37u, 200u}) {
    const auto inst = one_then_uniform(n);
    EXPECT_NEAR(policy_win_prob_exact(inst, fls_threshold_distribution(inst)).estimate,
                fls_one_then_uniform_sum(n), 1e-12)
        << "n=" << n;
  }
  // brute force agrees at n = 4
  const auto inst = one_then_uniform(4);
  EXPECT_NEAR(brute_force_win_prob(inst, PolicySpec{PolicyKind::fls}, 1).estimate,
              fls_one_then_uniform_sum(4), 1e-12);
}

TEST(BruteForce, Examples) {
  const auto a = brute_force_win_prob(Instance({1.0, 1.0}), PolicySpec{PolicyKind::asls}, 1);
  EXPECT_EQ(a.estimate, 1.0);
  EXPECT_EQ(a.method, EvalMethod::oracle);
  EXPECT_NEAR(brute_force_win_prob(Instance({0.5, 0.5}), PolicySpec{PolicyKind::fls}, 1).estimate,
              0.5, 1e-15);
}

TEST(BruteForce, RejectsTooManyBits) {
  EXPECT_THROW(brute_force_win_prob(iid_instance(6, 0.5), PolicySpec{PolicyKind::multi_sample}, 4),
               std::invalid_argument);
  EXPECT_THROW(brute_force_win_prob(iid_instance(23, 0.5), PolicySpec{PolicyKind::fls}, 1),
               std::invalid_argument);
}

TEST(BruteForce, AgreesWithJointEnumeration) {
  std::mt19937_64 gen(3);
  const std::vector<std::pair<PolicyKind, oracle::RowRule>> rules = {
      {PolicyKind::fls, oracle::fls_rule},
      {PolicyKind::asls, oracle::asls_rule},
      {PolicyKind::flsr, oracle::flsr_rule}};
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_probs(gen, 1 + trial % 5);
    const Instance inst(p);
    for (const auto& [kind, rule] : rules) {
      ASSERT_NEAR(brute_force_win_prob(inst, PolicySpec{kind}, 1).estimate,
                  oracle::joint_enumeration(p, rule), 1e-12);
    }
  }
}

TEST(QHat, Examples) {
  const auto zeros = qhat_statistics(SampleMatrix(5, 3));
  EXPECT_EQ(std::vector<std::uint64_t>(zeros.counts().begin(), zeros.counts().end()),
            (std::vector<std::uint64_t>{5, 5, 5, 5}));
  const auto ones = qhat_statistics(SampleMatrix(4, 3, std::vector<std::uint8_t>(12, 1)));
  EXPECT_EQ(ones.t(1), 0u);
  EXPECT_EQ(ones.t(3), 0u);
  EXPECT_EQ(ones.t(4), 4u);
  // last-success indices 0, 1, 3
  const SampleMatrix mixed(3, 3, {0, 0, 0, 1, 0, 0, 0, 1, 1});
  const auto s = qhat_statistics(mixed);
  EXPECT_EQ(std::vector<std::uint64_t>(s.counts().begin(), s.counts().end()),
            (std::vector<std::uint64_t>{1, 2, 2, 3}));
  EXPECT_DOUBLE_EQ(s.q(2), 2.0 / 3.0);
  EXPECT_EQ(s.q(4), 1.0);
}

TEST(QHat, RejectsInconsistentCounts) {
  EXPECT_THROW(QHatStatistics(3, {2, 1, 3}), std::invalid_argument);
  EXPECT_THROW(QHatStatistics(3, {0, 2}), std::invalid_argument);
}

TEST(MonteCarlo, DegenerateInstances) {
  for (std::size_t m : {1u, 7u}) {
    const auto r = monte_carlo_win_prob(Instance({1.0, 0.0}), PolicySpec{PolicyKind::fls},
                                        {m, 200, 9, 1});
    EXPECT_EQ(r.estimate, 1.0);
    EXPECT_EQ(r.ci_halfwidth, 0.0);
    EXPECT_EQ(r.method, EvalMethod::monte_carlo);
  }
  for (auto kind : {PolicyKind::fls, PolicyKind::asls, PolicyKind::flsr,
                    PolicyKind::estimated_bruss, PolicyKind::multi_sample}) {
    const auto r = monte_carlo_win_prob(iid_instance(5, 0.0), PolicySpec{kind}, {10, 100, 4, 1});
    EXPECT_EQ(r.estimate, 0.0);
  }
}

TEST(MonteCarlo, WithinFourSigmaOfBruteForce) {
  std::mt19937_64 gen(77);
  const std::vector<PolicyKind> kinds = {PolicyKind::fls, PolicyKind::asls, PolicyKind::flsr,
                                         PolicyKind::estimated_bruss, PolicyKind::multi_sample};
  int checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto p = random_probs(gen, n);
      const Instance inst(p);
      for (auto kind : kinds) {
        PolicySpec spec{kind, {0.1, 0.8}, std::nullopt};
        if (kind == PolicyKind::multi_sample) spec.epsilon = 0.05;
        const double exact = brute_force_win_prob(inst, spec, m).estimate;
        const auto mc = monte_carlo_win_prob(inst, spec, {m, 20000, 1000 + n * 10 + m, 1});
        const double sigma = mc.ci_halfwidth / 1.96;
        EXPECT_LE(std::abs(mc.estimate - exact), 4 * sigma + 1e-12)
            << to_string(kind) << " n=" << n << " m=" << m;
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 60);
}

TEST(MonteCarlo, MultiSampleMatchesOracleAtTwoByFour) {
  const Instance inst({0.35, 0.6});
  PolicySpec spec{PolicyKind::multi_sample, {}, 0.1};
  const double exact = brute_force_win_prob(inst, spec, 4).estimate;
  const auto mc = monte_carlo_win_prob(inst, spec, {4, 50000, 5, 1});
  EXPECT_LE(std::abs(mc.estimate - exact), 4 * mc.ci_halfwidth / 1.96);
}

TEST(MonteCarlo, BitIdenticalAcrossRunsAndThreadCounts) {
  const auto inst = random_with_total_odds(12, 1.5, 3);
  for (auto kind : {PolicyKind::asls, PolicyKind::multi_sample, PolicyKind::estimated_bruss}) {
    const PolicySpec spec{kind, {0.2, 0.7}, std::nullopt};
    const auto a = monte_carlo_win_prob(inst, spec, {50, 3001, 42, 1});
    const auto b = monte_carlo_win_prob(inst, spec, {50, 3001, 42, 1});
    const auto c = monte_carlo_win_prob(inst, spec, {50, 3001, 42, 4});
    const auto d = monte_carlo_win_prob(inst, spec, {50, 3001, 42, 7});
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.estimate, c.estimate);
    EXPECT_EQ(a.estimate, d.estimate);
    EXPECT_EQ(a.ci_halfwidth, d.ci_halfwidth);
    EXPECT_EQ(a.seed, 42u);
    EXPECT_EQ(a.replicates, 3001u);
  }
}

TEST(MonteCarlo, RejectsZeroReplicates) {
  EXPECT_THROW(monte_carlo_win_prob(Instance({0.5}), PolicySpec{}, {1, 0, 1, 1}),
               std::invalid_argument);
}

TEST(PairwiseSum, MatchesExactSumOfIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 1000.0 * 1001.0 / 2.0);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(DeviationTrace, AllZeroSamplesAreNegative) {
  const auto inst = iid_instance(10, 0.2);
  const auto trace = deviation_trace(inst, SampleMatrix(30, 10));
  const auto s = odds_summary(inst);
  EXPECT_EQ(trace.istar, critical_index(s));
  ASSERT_FALSE(trace.dvalues.empty());
  for (std::size_t t = 0; t < trace.dvalues.size(); ++t) {
    const double q = s.q(trace.indices[t]);
    EXPECT_LT(trace.dvalues[t], 0.0);
    EXPECT_DOUBLE_EQ(trace.dvalues[t], (q - 1.0) / q);
  }
}

TEST(DeviationTrace, CriticalIndex) {
  // Q_{i+1} = 0.8^(10-i) >= 1/e  <=>  10-i <= 4.48  <=>  i >= 6
  EXPECT_EQ(critical_index(odds_summary(iid_instance(10, 0.2))), 6u);
  EXPECT_EQ(critical_index(odds_summary(iid_instance(3, 0.0))), 1u);
  EXPECT_EQ(critical_index(odds_summary(iid_instance(3, 1.0))), 3u);
}

TEST(DeviationTrace, UnbiasedOnAverage) {
  const auto inst = iid_instance(12, 0.15);
  const std::size_t m = 40;
  const int draws = 4000;
  const auto s = odds_summary(inst);
  std::vector<double> sum, sumsq;
  std::vector<std::size_t> idx;
  for (int d = 0; d < draws; ++d) {
    const auto trace = deviation_trace(inst, draw_samples(inst, m, derive_seed(99, d)));
    if (sum.empty()) {
      sum.assign(trace.dvalues.size(), 0.0);
      sumsq.assign(trace.dvalues.size(), 0.0);
      idx = trace.indices;
    }
    for (std::size_t t = 0; t < trace.dvalues.size(); ++t) {
      sum[t] += trace.dvalues[t];
      sumsq[t] += trace.dvalues[t] * trace.dvalues[t];
    }
  }
  for (std::size_t t = 0; t < sum.size(); ++t) {
    const double mean = sum[t] / draws;
    const double var = sumsq[t] / draws - mean * mean;
    EXPECT_LE(std::abs(mean), 4 * std::sqrt(var / draws)) << "k=" << idx[t];
    // Var D_k = (1 - Q_k) / (m Q_k)
    const double q = s.q(idx[t]);
    EXPECT_NEAR(var, (1 - q) / (m * q), 0.15 * (1 - q) / (m * q));
  }
}
