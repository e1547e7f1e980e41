#include "spinstar/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace spinstar {
namespace {

// Imaginary parts or negative parts of the spin-flip eigenvalues beyond this are rejected.
constexpr double kEigenNoise = 1e-9;

Matrix4c spin_flip() {
  // sigma_y x sigma_y in the {|-->, |-+>, |+->, |++>} ordering
  Matrix4c y = Matrix4c::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace

double concurrence(const DensityMatrix4& rho) {
  rho.validate(kInputTolerance);
  const Matrix4c& m = rho.matrix();
  const Matrix4c y = spin_flip();
  const Matrix4c product = m * y * m.conjugate() * y;

  Eigen::ComplexEigenSolver<Matrix4c> solver(product, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("concurrence: eigensolver failed");

  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    const cplx lambda = solver.eigenvalues()(i);
    if (std::abs(lambda.imag()) > kEigenNoise || lambda.real() < -kEigenNoise)
      throw std::domain_error(fmt::format("concurrence: spin-flip eigenvalue {}{:+}i is not real and non-negative",
                                          lambda.real(), lambda.imag()));
    roots[i] = std::sqrt(std::max(0.0, lambda.real()));
  }
  const double largest = *std::max_element(roots.begin(), roots.end());
  const double sum = roots[0] + roots[1] + roots[2] + roots[3];
  return std::clamp(2.0 * largest - sum, 0.0, 1.0);
}

double concurrence_x_state(const DensityMatrix4& rho) {
  const auto p = [&](int i) { return rho(i, i).real(); };
  const double a = 2.0 * std::abs(rho(1, 2)) - 2.0 * std::sqrt(std::max(0.0, p(0) * p(3)));
  const double b = 2.0 * std::abs(rho(0, 3)) - 2.0 * std::sqrt(std::max(0.0, p(1) * p(2)));
  return std::max({0.0, a, b});
}

double purity(const DensityMatrix4& rho) {
  rho.validate(kInputTolerance);
  const double p = (rho.matrix() * rho.matrix()).trace().real();
  return std::clamp(p, 0.25 - 1e-12, 1.0 + 1e-12);
}

}  // namespace spinstar
