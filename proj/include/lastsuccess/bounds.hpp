// Closed-form guarantees and limits as functions of the sum of odds R.
// R may be +inf.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lastsuccess {

/// Full-information optimum: R e^{-R} for R <= 1, 1/e beyond.
double opt_bound(double r_value);

/// (e^{-R}, 1/(1+R)) bracketing the no-success probability; (0, 0) at R = inf.
std::pair<double, double> lemma1_bounds(double r_value);

/// ASLS guarantee: R(4+3R) / (4(1+R)^2) below (sqrt(3)-1)/2, 1/4 above.
double asls_lower_bound(double r_value);

/// FLSR guarantee: 1/4 - (1-2R) / (4(1+R)^2) below 1/2, 1/4 above.
double flsr_lower_bound(double r_value);

/// Large-n limit (1 - e^{-4}) / 4 of FLS on the (1, 2/n, ..., 2/n) family.
double fls_limit();

/// Root of x e^{-x} = 1/4 in (0, 1).
double alpha_crossover();

/// max(0, opt_bound(R) - 4 default_epsilon(m)).
double multi_sample_guarantee(std::size_t m, double r_value);

struct BoundCurvePoint {
  double r_value = 0.0;
  double asls_bound = 0.0;
  /// min(opt_bound(R), 1/4): no single-sample policy does better.
  double upper_bound = 0.0;
};

/// Points R = k * step for k = 0..floor(r_max / step).
std::vector<BoundCurvePoint> figure2_data(double step, double r_max);

}  // namespace lastsuccess
