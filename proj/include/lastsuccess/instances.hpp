// Instance families: the adversarial and illustrative constructions used in
// the analysis of the sample-based policies, plus random instances with a
// prescribed sum of odds.
#pragma once

#include <cstddef>
#include <cstdint>

#include "lastsuccess/core.hpp"

namespace lastsuccess {

/// (1, 0, ..., 0).
Instance one_then_zeros(std::size_t n);
/// (1, 2/n, ..., 2/n); requires n >= 3.
Instance one_then_uniform(std::size_t n);
/// p_i = 1/i.
Instance secretary(std::size_t n);
/// p_1 = ... = p_j = 1, remaining trials 0; requires 1 <= j <= n.
Instance staircase(std::size_t n, std::size_t j);
Instance two_trial(double p1, double p2);
Instance iid_instance(std::size_t n, double p);

/// Odds r_i = r_target * w_i with w uniform on the simplex (normalized
/// exponentials), so that sum r_i = r_target up to rounding.
Instance random_with_total_odds(std::size_t n, double r_target, std::uint64_t seed);

}  // namespace lastsuccess
