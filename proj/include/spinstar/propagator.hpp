#pragma once

// Closed-form matrix elements of U(t) = exp(-iHt) resolved on bath magnetic states.

#include <array>
#include <complex>

#include "spinstar/spin_algebra.hpp"

namespace spinstar {

/// One element U_ik acting on |chi_k> (x) |j,m> (x) |r,s>.
struct PropagatorEntry {
  std::complex<double> amplitude;
  int m_shift = 0;
  int s_shift = 0;
};

/// U(t)|chi_k, j, m, r, s> = sum_i entries[i][k].amplitude |chi_i, j, m + m_shift, r, s + s_shift>.
///
/// Row/column indices are 0-based over {|-->, |-+>, |+->, |++>}.
struct PropagatorBlock {
  double t = 0.0;
  std::array<std::array<PropagatorEntry, 4>, 4> entries{};

  const PropagatorEntry& operator()(int i, int k) const { return entries[i][k]; }
};

/// Change of bath-1 and bath-2 magnetic number when the qubits go from basis state k to i.
///
/// Flipping qubit 1 from - to + lowers m, and the reverse raises it; same for qubit 2 and s.
constexpr int m_shift_of(int i, int k) { return (k >> 1) - (i >> 1); }
constexpr int s_shift_of(int i, int k) { return (k & 1) - (i & 1); }

/// Square roots of the four ladder eigenvalues on a source state (j,m) x (r,s).
struct LadderRoots {
  double pm1 = 0.0;  // sqrt(J+J-)
  double mp1 = 0.0;  // sqrt(J-J+)
  double pm2 = 0.0;  // sqrt(calJ+ calJ-)
  double mp2 = 0.0;  // sqrt(calJ- calJ+)
};

LadderRoots ladder_roots(SectorState left, SectorState right);

/// Evaluates the sixteen U_ik(t) on a source state of both baths.
PropagatorBlock propagator_block(const CouplingParams& params, SectorState left,
                                 SectorState right, double t);

/// Same as propagator_block from precomputed ladder roots; skips all validation.
PropagatorBlock propagator_block(double delta, double bath_coupling, const LadderRoots& roots,
                                 double t);

/// Column k of the block: amplitudes of the four target qubit states. No validation.
std::array<std::complex<double>, 4> propagator_column(double delta, double bath_coupling,
                                                     const LadderRoots& roots, double t, int k);

/// Max over the four invariant subspaces of |i dU/dt - H U| using a central difference.
double schrodinger_residual(const CouplingParams& params, SectorState left, SectorState right,
                            double t, double dt);

}  // namespace spinstar
