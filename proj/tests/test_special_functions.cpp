#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "spinstar/special_functions.hpp"

using namespace spinstar;

namespace {

// 2F1(a, b; c; z) by direct summation; only used where the series converges quickly.
double hyp2f1_series(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// At z = -1 the Pfaff transform 2F1(a, b; c; z) = (1-z)^-b 2F1(c-a, b; c; z/(z-1)) moves the
// argument to 1/2.
double pfaff_at_minus_one(double a) { return hyp2f1_series(1.5 - a, 0.5, 1.5, 0.5) / std::sqrt(2.0); }

// int_0^1 (1+v^2)^-a dv by composite Simpson.
double integral_form(double a) {
  const int n = 4000;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double v = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::pow(1.0 + v * v, -a);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("erf and gamma") {
  CHECK(erf_fn(0.0) == 0.0);
  CHECK(erf_fn(10.0) == 1.0);
  CHECK(erf_fn(-0.5) == doctest::Approx(-0.5204998778130465).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-14));
  CHECK(gamma_fn(35.0) == doctest::Approx(2.9523279903960414e38).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("hyp2f1_special seed and first step") {
  CHECK(hyp2f1_special(0) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(hyp2f1_special(1) == doctest::Approx(0.5 * (std::numbers::pi / 4 + 0.5)).epsilon(1e-15));
}

TEST_CASE("hyp2f1_special matches the transformed series and the integral") {
  for (int n = 0; n <= kMaxHypergeometricIndex; ++n) {
    CAPTURE(n);
    CHECK(hyp2f1_special(n) == doctest::Approx(pfaff_at_minus_one(n + 1.0)).epsilon(1e-12));
    CHECK(hyp2f1_special(n) == doctest::Approx(integral_form(n + 1.0)).epsilon(1e-10));
    CHECK(hyp2f1_special_half(n) == doctest::Approx(pfaff_at_minus_one(n + 1.5)).epsilon(1e-12));
  }
}

TEST_CASE("n! 2F1(n+1, 1/2; 3/2; -1) equals the integral of the moment identity") {
  // I_n = int_0^1 n! (1+v^2)^-(n+1) dv
  for (int n = 0; n <= 10; ++n)
    CHECK(std::tgamma(n + 1.0) * hyp2f1_special(n) ==
          doctest::Approx(std::tgamma(n + 1.0) * integral_form(n + 1.0)).epsilon(1e-10));
}

TEST_CASE("series check of the arctan identity") {
  // 2F1(1, 1/2; 3/2; -z^2) = arctan(z)/z, inside the disc of convergence
  for (double z : {0.1, 0.5, 0.9}) CHECK(hyp2f1_series(1.0, 0.5, 1.5, -z * z) == doctest::Approx(std::atan(z) / z));
}

TEST_CASE("index guard") {
  CHECK_THROWS_AS(hyp2f1_special(-1), std::domain_error);
  CHECK_THROWS_AS(hyp2f1_special(kMaxHypergeometricIndex + 1), std::domain_error);
  CHECK_THROWS_AS(hyp2f1_special_half(kMaxHypergeometricIndex + 1), std::domain_error);
}
