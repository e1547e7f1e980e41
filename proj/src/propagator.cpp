#include "spinstar/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace spinstar {
namespace {

using namespace std::complex_literals;

// cos(t sqrt(M)) and sin(t sqrt(M))/sqrt(M) for one branch; the quotient tends to t at M = 0.
struct Branch {
  double c = 1.0;
  double s = 0.0;
};

Branch branch(double m_factor, double t) {
  if (m_factor <= 0.0) return {1.0, t};
  const double w = std::sqrt(m_factor);
  return {std::cos(t * w), std::sin(t * w) / w};
}

struct Pair {
  Branch plus;
  Branch minus;
};

// a, b are sqrt-eigenvalues of the bath-1 and bath-2 ladder products selected by the column.
Pair pair_for(double delta2, double g2, double a, double b, double t) {
  return {branch(delta2 + g2 * (a + b) * (a + b), t), branch(delta2 + g2 * (a - b) * (a - b), t)};
}

}  // namespace

LadderRoots ladder_roots(SectorState left, SectorState right) {
  return {std::sqrt(ladder_eigen(left, LadderOrder::plus_minus)),
          std::sqrt(ladder_eigen(left, LadderOrder::minus_plus)),
          std::sqrt(ladder_eigen(right, LadderOrder::plus_minus)),
          std::sqrt(ladder_eigen(right, LadderOrder::minus_plus))};
}

std::array<std::complex<double>, 4> propagator_column(double delta, double g,
                                                     const LadderRoots& roots, double t, int k) {
  const double d2 = delta * delta;
  const double g2 = g * g;
  const double hg = 0.5 * g;
  std::array<std::complex<double>, 4> u{};

  // Every ladder prefactor J-, calJ- ... of the operator expressions contributes exactly the
  // square root that sits in the matching denominator, so only scalar brackets remain. When a
  // ladder annihilates the source, the two branches coincide and the bracket is exactly zero.
  switch (k) {
    case 0: {  // |-->: M1 with sqrt(J+J-), sqrt(calJ+calJ-)
      const double a = roots.pm1, b = roots.pm2;
      const auto [p, q] = pair_for(d2, g2, a, b, t);
      u[0] = 0.5 * (p.c + q.c - 1i * delta * (p.s + q.s));
      u[1] = -1i * hg * ((a + b) * p.s - (a - b) * q.s);
      u[2] = -1i * hg * ((a + b) * p.s + (a - b) * q.s);
      u[3] = 0.5 * (p.c - q.c - 1i * delta * (p.s - q.s));
      break;
    }
    case 1: {  // |-+>: M2 with sqrt(J+J-), sqrt(calJ-calJ+)
      const double a = roots.pm1, b = roots.mp2;
      const auto [p, q] = pair_for(d2, g2, a, b, t);
      u[1] = 0.5 * (p.c + q.c + 1i * delta * (p.s + q.s));
      u[0] = -1i * hg * ((a + b) * p.s - (a - b) * q.s);
      u[2] = 0.5 * (p.c - q.c + 1i * delta * (p.s - q.s));
      u[3] = -1i * hg * ((a + b) * p.s + (a - b) * q.s);
      break;
    }
    case 2: {  // |+->: M3 with sqrt(J-J+), sqrt(calJ+calJ-)
      const double a = roots.mp1, b = roots.pm2;
      const auto [p, q] = pair_for(d2, g2, a, b, t);
      u[2] = 0.5 * (p.c + q.c + 1i * delta * (p.s + q.s));
      u[0] = -1i * hg * ((b + a) * p.s - (b - a) * q.s);
      u[1] = 0.5 * (p.c - q.c + 1i * delta * (p.s - q.s));
      u[3] = -1i * hg * ((b + a) * p.s + (b - a) * q.s);
      break;
    }
    case 3: {  // |++>: M4 with sqrt(J-J+), sqrt(calJ-calJ+)
      const double a = roots.mp1, b = roots.mp2;
      const auto [p, q] = pair_for(d2, g2, a, b, t);
      u[3] = 0.5 * (p.c + q.c - 1i * delta * (p.s + q.s));
      u[1] = -1i * hg * ((b + a) * p.s - (b - a) * q.s);
      u[2] = -1i * hg * ((b + a) * p.s + (b - a) * q.s);
      u[0] = 0.5 * (p.c - q.c - 1i * delta * (p.s - q.s));
      break;
    }
    default:
      throw std::out_of_range("propagator_column: column index must be 0..3");
  }
  return u;
}

PropagatorBlock propagator_block(double delta, double g, const LadderRoots& roots, double t) {
  PropagatorBlock block;
  block.t = t;
  for (int k = 0; k < 4; ++k) {
    const auto column = propagator_column(delta, g, roots, t, k);
    for (int i = 0; i < 4; ++i) block.entries[i][k] = {column[i], m_shift_of(i, k), s_shift_of(i, k)};
  }
  return block;
}

PropagatorBlock propagator_block(const CouplingParams& params, SectorState left,
                                 SectorState right, double t) {
  params.validate();
  left.validate();
  right.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("propagator_block: t must be finite");
  return propagator_block(params.delta, params.bath_coupling(), ladder_roots(left, right), t);
}

double schrodinger_residual(const CouplingParams& params, SectorState left, SectorState right,
                            double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("schrodinger_residual: dt must be positive");
  const PropagatorBlock now = propagator_block(params, left, right, t);
  const PropagatorBlock fwd = propagator_block(params, left, right, t + dt);
  const PropagatorBlock bwd = propagator_block(params, left, right, t - dt);
  const double g = params.bath_coupling();

  // Bath state reached from the source when the qubits land in basis state i.
  auto target = [&](int i, int k) {
    return std::pair{SectorState{left.j, left.m + m_shift_of(i, k)},
                     SectorState{right.j, right.m + s_shift_of(i, k)}};
  };

  // <chi_i, target_i | H | chi_ip, target_ip> inside the invariant subspace of column k.
  auto hamiltonian = [&](int i, int ip, int k) -> double {
    if (i == ip) return params.delta * ((i >> 1) == (i & 1) ? 1.0 : -1.0);
    const auto [from1, from2] = target(ip, k);
    const bool flip1 = (i >> 1) != (ip >> 1);
    const bool flip2 = (i & 1) != (ip & 1);
    if (flip1 && !flip2) {
      // qubit 1 raised pairs with J-, lowered with J+
      const auto order = (ip >> 1) == 0 ? LadderOrder::plus_minus : LadderOrder::minus_plus;
      return g * std::sqrt(ladder_eigen(from1, order));
    }
    if (flip2 && !flip1) {
      const auto order = (ip & 1) == 0 ? LadderOrder::plus_minus : LadderOrder::minus_plus;
      return g * std::sqrt(ladder_eigen(from2, order));
    }
    return 0.0;
  };

  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      const std::complex<double> derivative =
          std::complex<double>(0.0, 1.0) * (fwd(i, k).amplitude - bwd(i, k).amplitude) / (2.0 * dt);
      std::complex<double> hu = 0.0;
      for (int ip = 0; ip < 4; ++ip) {
        const auto [s1, s2] = target(ip, k);
        if (!s1.is_valid() || !s2.is_valid()) continue;
        const auto [t1, t2] = target(i, k);
        if (!t1.is_valid() || !t2.is_valid()) continue;
        hu += hamiltonian(i, ip, k) * now(ip, k).amplitude;
      }
      worst = std::max(worst, std::abs(derivative - hu));
    }
  }
  return worst;
}

}  // namespace spinstar
