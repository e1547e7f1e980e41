#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "spinstar/density_matrix.hpp"
#include "spinstar/spin_algebra.hpp"

namespace spinstar::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Eigen::MatrixXcd random_complex(int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = cplx(n(rng()), n(rng()));
  return m;
}

/// Random full-rank state G G^dagger / tr.
inline DensityMatrix4 random_state() {
  const Eigen::MatrixXcd g = random_complex(4, 4);
  Matrix4c m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix4::from_matrix(m);
}

/// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex(n, n));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline SectorState random_sector_state(int n_bath) {
  const int twice_j = n_bath - 2 * uniform_int(0, n_bath / 2);
  const int twice_m = -twice_j + 2 * uniform_int(0, twice_j);
  return {HalfInt::from_twice(twice_j), HalfInt::from_twice(twice_m)};
}

inline double max_off_diagonal(const DensityMatrix4& rho) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (i != k) worst = std::max(worst, std::abs(rho(i, k)));
  return worst;
}

}  // namespace spinstar::testing
