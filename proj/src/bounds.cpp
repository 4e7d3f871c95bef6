#include "lastsuccess/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lastsuccess/policies.hpp"

namespace lastsuccess {

namespace {

void check_r(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("sum of odds must be non-negative");
}

const double kAslsJunction = (std::numbers::sqrt3 - 1.0) / 2.0;

}  // namespace

double opt_bound(double r_value) {
  check_r(r_value);
  if (r_value >= 1.0) return 1.0 / std::numbers::e;
  return r_value * std::exp(-r_value);
}

std::pair<double, double> lemma1_bounds(double r_value) {
  check_r(r_value);
  if (std::isinf(r_value)) return {0.0, 0.0};
  return {std::exp(-r_value), 1.0 / (1.0 + r_value)};
}

double asls_lower_bound(double r_value) {
  check_r(r_value);
  if (r_value >= kAslsJunction) return 0.25;
  const double d = 1.0 + r_value;
  return r_value * (4.0 + 3.0 * r_value) / (4.0 * d * d);
}

double flsr_lower_bound(double r_value) {
  check_r(r_value);
  if (r_value >= 0.5) return 0.25;
  const double d = 1.0 + r_value;
  return 0.25 - (1.0 - 2.0 * r_value) / (4.0 * d * d);
}

double fls_limit() { return (1.0 - std::exp(-4.0)) / 4.0; }

double alpha_crossover() {
  // x e^{-x} increases on [0, 1]; the bracket holds the root below 1.
  double lo = 0.1;
  double hi = 0.9;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(-mid) < 0.25) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double multi_sample_guarantee(std::size_t m, double r_value) {
  return std::max(0.0, opt_bound(r_value) - 4.0 * default_epsilon(m));
}

std::vector<BoundCurvePoint> figure2_data(double step, double r_max) {
  if (!(step > 0.0) || !(r_max > 0.0)) {
    throw std::invalid_argument("step and r_max must be positive");
  }
  // tolerate r_max / step landing a hair below an integer
  const auto count = static_cast<std::size_t>(std::floor(r_max / step + 1e-9)) + 1;
  std::vector<BoundCurvePoint> rows;
  rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double r = static_cast<double>(k) * step;
    rows.push_back({r, asls_lower_bound(r), std::min(opt_bound(r), 0.25)});
  }
  return rows;
}

}  // namespace lastsuccess
