#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace spinstar {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

/// Tolerance used when accepting user-supplied states.
inline constexpr double kInputTolerance = 1e-9;

/// Two-qubit state in the basis {|--> , |-+>, |+->, |++>}.
///
/// Index 0 is |-->, index 3 is |++>. The first sign belongs to qubit 1.
class DensityMatrix4 {
 public:
  DensityMatrix4() = default;

  /// Validates Hermiticity, unit trace and positivity within `tolerance`.
  static DensityMatrix4 from_matrix(const Matrix4c& m, double tolerance = kInputTolerance);
  /// Wraps a matrix produced by trusted numerical code without checking it.
  static DensityMatrix4 unchecked(const Matrix4c& m);

  static DensityMatrix4 maximally_mixed();
  /// Projector onto a normalised state vector.
  static DensityMatrix4 pure(const Eigen::Vector4cd& psi);
  /// Basis product state; `plus1`/`plus2` select |+> for qubit 1/2.
  static DensityMatrix4 product(bool plus1, bool plus2);

  const Matrix4c& matrix() const { return m_; }
  cplx operator()(int i, int k) const { return m_(i, k); }

  /// Empty string when valid, otherwise a description of the first violated invariant.
  std::string violation(double tolerance) const;
  void validate(double tolerance = kInputTolerance) const;

 private:
  explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}
  Matrix4c m_ = Matrix4c::Zero();
};

enum class BellState { psi_minus, psi_plus, phi_minus, phi_plus };

Eigen::Vector4cd bell_vector(BellState which);
DensityMatrix4 bell_state(BellState which);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix4c& a, const Matrix4c& b);

}  // namespace spinstar
