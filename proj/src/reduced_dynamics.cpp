#include "spinstar/reduced_dynamics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinstar/parallel.hpp"
#include "spinstar/propagator.hpp"

namespace spinstar {
namespace {

// Ladder roots of every magnetic state of one retained sector.
struct BathSector {
  double weight = 0.0;  // nu / 2^N
  std::vector<double> sqrt_pm;
  std::vector<double> sqrt_mp;
};

std::vector<BathSector> bath_sectors(int n_bath) {
  std::vector<BathSector> out;
  for (const auto& sp : sector_probabilities(n_bath)) {
    const int dim = sp.j.twice() + 1;
    if (sp.weight * dim < kSectorCutoff) continue;
    BathSector sector;
    sector.weight = sp.weight;
    for (int tm = -sp.j.twice(); tm <= sp.j.twice(); tm += 2) {
      const SectorState state{sp.j, HalfInt::from_twice(tm)};
      sector.sqrt_pm.push_back(std::sqrt(ladder_eigen(state, LadderOrder::plus_minus)));
      sector.sqrt_mp.push_back(std::sqrt(ladder_eigen(state, LadderOrder::minus_plus)));
    }
    out.push_back(std::move(sector));
  }
  return out;
}

// rho_il += rho0_kk' U_ik conj(U_lk'), restricted to pairs landing on the same bath state.
struct Term {
  int i, l, k, kp;
  cplx coefficient;
};

// Visits every retained source state (j,m) x (r,s) with its weight nu_j nu_r / 4^N and
// lets `accumulate` add its contribution into a 4x4 partial sum. Partial sums are formed
// per bath-1 sector and combined in sector order.
template <class Accumulate>
Matrix4c bath_trace(const CouplingParams& params, Accumulate&& accumulate) {
  const std::vector<BathSector> sectors = bath_sectors(params.n_bath);
  std::vector<Matrix4c> partial(sectors.size(), Matrix4c::Zero());

  parallel_for(sectors.size(), [&](std::size_t a) {
    const BathSector& left = sectors[a];
    Matrix4c sum_left = Matrix4c::Zero();
    for (const BathSector& right : sectors) {
      Matrix4c sum = Matrix4c::Zero();
      for (std::size_t mi = 0; mi < left.sqrt_pm.size(); ++mi) {
        for (std::size_t si = 0; si < right.sqrt_pm.size(); ++si) {
          const LadderRoots roots{left.sqrt_pm[mi], left.sqrt_mp[mi], right.sqrt_pm[si],
                                  right.sqrt_mp[si]};
          accumulate(roots, sum);
        }
      }
      sum_left += (left.weight * right.weight) * sum;
    }
    partial[a] = sum_left;
  });

  Matrix4c total = Matrix4c::Zero();
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

DensityMatrix4 evolve(const DensityMatrix4& rho0, const CouplingParams& params, double t) {
  rho0.validate(kInputTolerance);
  params.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("evolve: t must be finite");

  std::vector<Term> terms;
  std::array<bool, 4> needed{};
  for (int i = 0; i < 4; ++i) {
    for (int l = i; l < 4; ++l) {
      for (int k = 0; k < 4; ++k) {
        for (int kp = 0; kp < 4; ++kp) {
          const cplx c = rho0(k, kp);
          if (c == cplx(0.0)) continue;
          if (m_shift_of(i, k) != m_shift_of(l, kp) || s_shift_of(i, k) != s_shift_of(l, kp))
            continue;
          terms.push_back({i, l, k, kp, c});
          needed[k] = needed[kp] = true;
        }
      }
    }
  }

  const double delta = params.delta;
  const double g = params.bath_coupling();
  Matrix4c upper = bath_trace(params, [&](const LadderRoots& roots, Matrix4c& sum) {
    std::array<std::array<cplx, 4>, 4> column{};
    for (int k = 0; k < 4; ++k)
      if (needed[k]) column[k] = propagator_column(delta, g, roots, t, k);
    for (const Term& term : terms)
      sum(term.i, term.l) += term.coefficient * column[term.k][term.i] * std::conj(column[term.kp][term.l]);
  });

  Matrix4c rho = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) {
    rho(i, i) = upper(i, i).real();
    for (int l = i + 1; l < 4; ++l) {
      rho(i, l) = upper(i, l);
      rho(l, i) = std::conj(upper(i, l));
    }
  }
  return DensityMatrix4::unchecked(rho);
}

DensityMatrix4 evolve_bell(BellState which, const CouplingParams& params, double t) {
  params.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("evolve_bell: t must be finite");

  const bool singlet_family = which == BellState::psi_minus || which == BellState::psi_plus;
  const double sign = (which == BellState::psi_plus || which == BellState::phi_plus) ? 1.0 : -1.0;
  // Columns carrying the initial state: |-+>,|+-> for psi; |-->,|++> for phi.
  const int ka = singlet_family ? 1 : 0;
  const int kb = singlet_family ? 2 : 3;
  // Coherence between the two populated basis states: rho_23 for psi, rho_14 for phi.
  const int ci = singlet_family ? 1 : 0;
  const int cl = singlet_family ? 2 : 3;

  const double delta = params.delta;
  const double g = params.bath_coupling();
  Matrix4c acc = bath_trace(params, [&](const LadderRoots& roots, Matrix4c& sum) {
    const auto ua = propagator_column(delta, g, roots, t, ka);
    const auto ub = propagator_column(delta, g, roots, t, kb);
    for (int i = 0; i < 4; ++i) sum(i, i) += std::norm(ua[i]) + std::norm(ub[i]);
    sum(ci, cl) += ua[ci] * std::conj(ub[cl]);
  });

  // Overall factor 2^-(2N+1): the bath trace supplies 4^-N, the Bell amplitudes 1/2.
  Matrix4c rho = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) rho(i, i) = 0.5 * acc(i, i).real();
  rho(ci, cl) = 0.5 * sign * acc(ci, cl);
  rho(cl, ci) = std::conj(rho(ci, cl));
  return DensityMatrix4::unchecked(rho);
}

}  // namespace spinstar
