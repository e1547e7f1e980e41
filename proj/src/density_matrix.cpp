#include "spinstar/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace spinstar {

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4c& m, double tolerance) {
  DensityMatrix4 rho(m);
  rho.validate(tolerance);
  return rho;
}

DensityMatrix4 DensityMatrix4::unchecked(const Matrix4c& m) { return DensityMatrix4(m); }

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(Matrix4c::Identity() * 0.25);
}

DensityMatrix4 DensityMatrix4::pure(const Eigen::Vector4cd& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > kInputTolerance)
    throw std::invalid_argument("pure: state vector is not normalised");
  return DensityMatrix4(psi * psi.adjoint());
}

DensityMatrix4 DensityMatrix4::product(bool plus1, bool plus2) {
  Matrix4c m = Matrix4c::Zero();
  const int index = (plus1 ? 2 : 0) + (plus2 ? 1 : 0);
  m(index, index) = 1.0;
  return DensityMatrix4(m);
}

std::string DensityMatrix4::violation(double tolerance) const {
  if (!m_.allFinite()) return "matrix has non-finite entries";
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance) return fmt::format("not Hermitian (deviation {:.3g})", herm);
  const cplx trace = m_.trace();
  if (std::abs(trace - 1.0) > tolerance)
    return fmt::format("trace is {:.12g}{:+.3g}i, expected 1", trace.real(), trace.imag());
  const Matrix4c h = 0.5 * (m_ + m_.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix4c>(h, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff();
  if (min_eig < -tolerance) return fmt::format("not positive semidefinite (eigenvalue {:.3g})", min_eig);
  return {};
}

void DensityMatrix4::validate(double tolerance) const {
  const std::string why = violation(tolerance);
  if (!why.empty()) throw std::invalid_argument("invalid density matrix: " + why);
}

Eigen::Vector4cd bell_vector(BellState which) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (which) {
    case BellState::psi_minus: v(1) = s; v(2) = -s; break;
    case BellState::psi_plus: v(1) = s; v(2) = s; break;
    case BellState::phi_minus: v(0) = s; v(3) = -s; break;
    case BellState::phi_plus: v(0) = s; v(3) = s; break;
  }
  return v;
}

DensityMatrix4 bell_state(BellState which) { return DensityMatrix4::pure(bell_vector(which)); }

double max_abs_diff(const Matrix4c& a, const Matrix4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace spinstar
