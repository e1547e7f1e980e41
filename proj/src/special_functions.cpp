#include "spinstar/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinstar {
namespace {

void check_index(int n, const char* who) {
  if (n < 0 || n > kMaxHypergeometricIndex)
    throw std::domain_error(std::string(who) + ": index must be in [0, " +
                            std::to_string(kMaxHypergeometricIndex) + "]");
}

// G(a) = 2F1(a, 1/2; 3/2; -1) = int_0^1 (1+v^2)^-a dv obeys 2a G(a+1) = (2a-1) G(a) + 2^-a.
// The ratio (2a-1)/(2a) < 1 keeps the forward direction stable.
double forward(double a, double seed, int steps) {
  double g = seed;
  for (int i = 0; i < steps; ++i, a += 1.0) g = ((2.0 * a - 1.0) * g + std::exp2(-a)) / (2.0 * a);
  return g;
}

}  // namespace

double erf_fn(double x) { return std::erf(x); }

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double hyp2f1_special(int n) {
  check_index(n, "hyp2f1_special");
  return forward(1.0, std::numbers::pi / 4.0, n);
}

double hyp2f1_special_half(int n) {
  check_index(n, "hyp2f1_special_half");
  return forward(1.5, 1.0 / std::numbers::sqrt2, n);
}

}  // namespace spinstar
