#include "lastsuccess/instances.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace lastsuccess {

namespace {

void require_n(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
}

}  // namespace

Instance one_then_zeros(std::size_t n) {
  require_n(n);
  std::vector<double> p(n, 0.0);
  p[0] = 1.0;
  return Instance(std::move(p));
}

Instance one_then_uniform(std::size_t n) {
  if (n < 3) throw std::invalid_argument("one_then_uniform needs n >= 3");
  std::vector<double> p(n, 2.0 / static_cast<double>(n));
  p[0] = 1.0;
  return Instance(std::move(p));
}

Instance secretary(std::size_t n) {
  require_n(n);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = 1.0 / static_cast<double>(i + 1);
  return Instance(std::move(p));
}

Instance staircase(std::size_t n, std::size_t j) {
  require_n(n);
  if (j < 1 || j > n) throw std::invalid_argument("staircase needs 1 <= j <= n");
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < j; ++i) p[i] = 1.0;
  return Instance(std::move(p));
}

Instance two_trial(double p1, double p2) { return Instance({p1, p2}); }

Instance iid_instance(std::size_t n, double p) {
  require_n(n);
  return Instance(std::vector<double>(n, p));
}

Instance random_with_total_odds(std::size_t n, double r_target, std::uint64_t seed) {
  require_n(n);
  if (!(r_target > 0.0) || std::isinf(r_target)) {
    throw std::invalid_argument("r_target must be a positive finite real");
  }
  Engine engine(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    // weights must be strictly positive
    do {
      x = expo(engine);
    } while (!(x > 0.0));
    total += x;
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r_target * w[i] / total;
    p[i] = r / (1.0 + r);
  }
  return Instance(std::move(p));
}

}  // namespace lastsuccess
