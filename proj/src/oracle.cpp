#include "spinstar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinstar {
namespace {

// <m-1|J-|m>, which also equals <m|J+|m-1>.
double lowering(HalfInt j, HalfInt m) {
  return std::sqrt((j.value() + m.value()) * (j.value() - m.value() + 1.0));
}

void check_range(int n_bath, HalfInt j) {
  if (j.twice() < n_bath % 2 || j.twice() > n_bath || (n_bath - j.twice()) % 2 != 0)
    throw std::invalid_argument("sector spin " + j.to_string() + " is not allowed for N=" +
                                std::to_string(n_bath));
}

}  // namespace

int SectorHamiltonian::index(int qubit, HalfInt m, HalfInt s) const {
  const int mi = (m + j).twice() / 2;
  const int si = (s + r).twice() / 2;
  return qubit * bath_dim() + mi * (r.twice() + 1) + si;
}

SectorHamiltonian sector_hamiltonian(const CouplingParams& params, HalfInt j, HalfInt r) {
  params.validate();
  check_range(params.n_bath, j);
  check_range(params.n_bath, r);

  SectorHamiltonian h;
  h.j = j;
  h.r = r;
  h.dim = 4 * (j.twice() + 1) * (r.twice() + 1);
  h.matrix = Eigen::MatrixXcd::Zero(h.dim, h.dim);
  const double g = params.bath_coupling();

  for (int q = 0; q < 4; ++q) {
    const bool up1 = (q >> 1) != 0;
    const bool up2 = (q & 1) != 0;
    for (HalfInt m = -j; m <= j; m = m + 1) {
      for (HalfInt s = -r; s <= r; s = s + 1) {
        const int col = h.index(q, m, s);
        // 4 delta S1z S2z
        h.matrix(col, col) = params.delta * (up1 == up2 ? 1.0 : -1.0);
        // S1+ J-: qubit 1 - -> +, m -> m-1. The conjugate S1- J+ is filled by symmetry.
        if (!up1 && m > -j) {
          const int row = h.index(q | 2, m - 1, s);
          h.matrix(row, col) = g * lowering(j, m);
          h.matrix(col, row) = g * lowering(j, m);
        }
        // S2+ calJ-
        if (!up2 && s > -r) {
          const int row = h.index(q | 1, m, s - 1);
          h.matrix(row, col) = g * lowering(r, s);
          h.matrix(col, row) = g * lowering(r, s);
        }
      }
    }
  }
  return h;
}

Oracle::Oracle(const CouplingParams& params) : params_(params) {
  params_.validate();
  if (params_.n_bath > kOracleMaxBath)
    throw std::invalid_argument("oracle: N=" + std::to_string(params_.n_bath) +
                                " exceeds the dense-reference cap of " +
                                std::to_string(kOracleMaxBath) +
                                "; use the closed-form evolve path instead");

  const auto weights = sector_weights(params_.n_bath);
  const double norm = std::ldexp(1.0, -2 * params_.n_bath);
  for (const auto& left : weights) {
    for (const auto& right : weights) {
      Decomposition d;
      d.hamiltonian = sector_hamiltonian(params_, left.j, right.j);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d.hamiltonian.matrix);
      if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
      d.energies = solver.eigenvalues();
      d.vectors = solver.eigenvectors();
      d.weight = static_cast<double>(left.weight) * static_cast<double>(right.weight) * norm;
      sectors_.emplace(std::pair{left.j.twice(), right.j.twice()}, std::move(d));
    }
  }
}

const Oracle::Decomposition& Oracle::sector(HalfInt j, HalfInt r) const {
  const auto it = sectors_.find({j.twice(), r.twice()});
  if (it == sectors_.end())
    throw std::invalid_argument("oracle: no sector (" + j.to_string() + ", " + r.to_string() + ")");
  return it->second;
}

Eigen::MatrixXcd Oracle::sector_propagator(HalfInt j, HalfInt r, double t) const {
  const Decomposition& d = sector(j, r);
  const Eigen::VectorXcd phases =
      (d.energies.cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  return d.vectors * phases.asDiagonal() * d.vectors.adjoint();
}

DensityMatrix4 Oracle::evolve(const DensityMatrix4& rho0, double t) const {
  rho0.validate(kInputTolerance);
  if (!std::isfinite(t)) throw std::invalid_argument("oracle: t must be finite");

  Matrix4c rho = Matrix4c::Zero();
  for (const auto& [key, d] : sectors_) {
    const int bath = d.hamiltonian.bath_dim();
    const Eigen::MatrixXcd u = sector_propagator(d.hamiltonian.j, d.hamiltonian.r, t);

    // tr_B[U (rho0 x 1) U^dagger]_il = sum_kl' rho0_kl' tr(U_ik U_ll'^dagger) over bath blocks.
    Matrix4c reduced = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) {
      for (int l = 0; l < 4; ++l) {
        cplx acc = 0.0;
        for (int k = 0; k < 4; ++k) {
          for (int lp = 0; lp < 4; ++lp) {
            if (rho0(k, lp) == cplx(0.0)) continue;
            const auto a = u.block(i * bath, k * bath, bath, bath);
            const auto b = u.block(l * bath, lp * bath, bath, bath);
            acc += rho0(k, lp) * (a.array() * b.array().conjugate()).sum();
          }
        }
        reduced(i, l) = acc;
      }
    }
    rho += d.weight * reduced;
  }
  return DensityMatrix4::unchecked(rho);
}

double Oracle::eigen_residual() const {
  double worst = 0.0;
  for (const auto& [key, d] : sectors_) {
    const Eigen::MatrixXcd& h = d.hamiltonian.matrix;
    const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::MatrixXcd r = h * d.vectors - d.vectors * d.energies.cast<cplx>().asDiagonal();
    worst = std::max(worst, r.cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

DensityMatrix4 oracle_evolve(const DensityMatrix4& rho0, const CouplingParams& params, double t) {
  return Oracle(params).evolve(rho0, t);
}

}  // namespace spinstar
