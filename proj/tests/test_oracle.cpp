#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "helpers.hpp"
#include "spinstar/measures.hpp"
#include "spinstar/oracle.hpp"

using namespace spinstar;

namespace {

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

// Spin-1/2 operator placed at `site` among `sites` spins; per-spin basis {|->, |+>}.
Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, int site, int sites) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < sites; ++k) {
    const Eigen::MatrixXcd factor = k == site ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

// The whole 2^(2N+2)-dimensional problem: no sectors, no ladder algebra.
DensityMatrix4 brute_force(const DensityMatrix4& rho0, const CouplingParams& p, double t) {
  const int n = p.n_bath;
  const int sites = 2 + 2 * n;
  Eigen::Matrix2cd raise = Eigen::Matrix2cd::Zero();
  raise(1, 0) = 1.0;
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = -1.0;
  z(1, 1) = 1.0;

  const Eigen::MatrixXcd s1 = embed(raise, 0, sites);
  const Eigen::MatrixXcd s2 = embed(raise, 1, sites);
  Eigen::MatrixXcd j1 = Eigen::MatrixXcd::Zero(s1.rows(), s1.cols());
  Eigen::MatrixXcd j2 = j1;
  for (int k = 0; k < n; ++k) {
    j1 += embed(raise, 2 + k, sites);
    j2 += embed(raise, 2 + n + k, sites);
  }
  const double g = p.bath_coupling();
  const Eigen::MatrixXcd h = p.delta * embed(z, 0, sites) * embed(z, 1, sites) +
                             g * (s1 * j1.adjoint() + s1.adjoint() * j1 + s2 * j2.adjoint() + s2.adjoint() * j2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases = (-cplx(0, 1) * t * es.eigenvalues().cast<cplx>()).array().exp();
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  const int bath = 1 << (2 * n);
  const Eigen::MatrixXcd full =
      Eigen::kroneckerProduct(rho0.matrix(), Eigen::MatrixXcd::Identity(bath, bath) / double(bath)).eval();
  const Eigen::MatrixXcd evolved = u * full * u.adjoint();
  Matrix4c out = Matrix4c::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int e = 0; e < bath; ++e) out(a, b) += evolved(a * bath + e, b * bath + e);
  return DensityMatrix4::unchecked(out);
}

}  // namespace

TEST_CASE("sector Hamiltonian structure") {
  SUBCASE("alpha = 0 gives the Ising diagonal") {
    const SectorHamiltonian h = sector_hamiltonian({0.0, 1.5, 3}, half(3), half(1));
    CHECK(h.dim == 4 * 4 * 2);
    CHECK((h.matrix - Eigen::MatrixXcd(h.matrix.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    for (int q = 0; q < 4; ++q) {
      const double expected = (q == 0 || q == 3) ? 1.5 : -1.5;
      CHECK(h.matrix(h.index(q, half(1), half(-1)), h.index(q, half(1), half(-1))).real() == expected);
    }
  }
  SUBCASE("N = 1 is Hermitian and traceless at delta = 0") {
    const SectorHamiltonian h = sector_hamiltonian({1.0, 0.0, 1}, half(1), half(1));
    CHECK(h.dim == 16);
    CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(h.matrix.trace()) < 1e-15);
  }
  SUBCASE("spectrum is symmetric at delta = 0") {
    const SectorHamiltonian h = sector_hamiltonian({1.0, 0.0, 2}, half(2), half(2));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
    const Eigen::VectorXd e = es.eigenvalues();
    for (int i = 0; i < e.size(); ++i) CHECK(e(i) == doctest::Approx(-e(e.size() - 1 - i)).epsilon(1e-12));
  }
  SUBCASE("out-of-range spins are rejected") {
    CHECK_THROWS_AS(sector_hamiltonian({1.0, 0.0, 2}, half(4), half(2)), std::invalid_argument);
    CHECK_THROWS_AS(sector_hamiltonian({1.0, 0.0, 2}, half(1), half(2)), std::invalid_argument);
  }
}

TEST_CASE("sector propagators are unitary and the eigendecomposition is tight") {
  const Oracle oracle({1.0, 0.7, 5});
  CHECK(oracle.eigen_residual() < 1e-10);
  for (const auto& a : sector_weights(5))
    for (const auto& b : sector_weights(5)) {
      const Eigen::MatrixXcd u = oracle.sector_propagator(a.j, b.j, 3.1);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
      CHECK((u * u.adjoint() - id).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("oracle evolution basics") {
  const DensityMatrix4 rho0 = testing::random_state();
  CHECK(max_abs_diff(oracle_evolve(rho0, {1.0, 1.0, 3}, 0.0).matrix(), rho0.matrix()) < 1e-12);

  const DensityMatrix4 up = oracle_evolve(DensityMatrix4::product(true, true), {1.0, 2.0, 3}, 1.1);
  CHECK(testing::max_off_diagonal(up) < 1e-12);
  CHECK(concurrence(up) < 1e-12);

  CHECK(oracle_evolve(bell_state(BellState::psi_minus), {1.0, 0.0, 1}, 1.5707963267948966).violation(1e-10).empty());
  CHECK_THROWS_AS(Oracle({1.0, 1.0, kOracleMaxBath + 1}), std::invalid_argument);
}

TEST_CASE("oracle matches the unreduced Hilbert-space evolution") {
  for (int n : {1, 2}) {
    const CouplingParams p{1.0, 0.6, n};
    for (int trial = 0; trial < 3; ++trial) {
      const DensityMatrix4 rho0 = testing::random_state();
      const double t = testing::uniform(0.0, 6.0);
      CHECK(max_abs_diff(oracle_evolve(rho0, p, t).matrix(), brute_force(rho0, p, t).matrix()) < 1e-11);
    }
  }
}
