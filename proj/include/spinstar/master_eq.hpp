#pragma once

// Second-order (Born) master equation for the two qubits, in the interaction picture
// with respect to the Ising term. Time in units of 1/alpha, delta in units of alpha.

#include <vector>

#include "spinstar/density_matrix.hpp"

namespace spinstar {

struct MasterState {
  double t = 0.0;
  DensityMatrix4 rho_tilde;
};

/// Largest step accepted by `volterra_solve`.
inline constexpr double kMaxVolterraStep = 0.01;

/// Evenly spaced grid 0, h, ..., t_end with `steps` intervals.
std::vector<double> uniform_grid(double t_end, int steps);

/// Solves the Born integro-differential equations with the implicit trapezoidal rule for
/// both the memory integral and the time step (second order in h).
///
/// The grid must start at 0, be uniform and increasing, with step at most kMaxVolterraStep.
/// Throws std::invalid_argument otherwise; std::runtime_error if the trace drifts.
std::vector<MasterState> volterra_solve(const DensityMatrix4& rho0, double delta, const std::vector<double>& t_grid);

/// exp{[cos(2 delta t) - 1] / (n delta^2)}, and its limit exp(-2 t^2 / n) at delta = 0.
double timelocal_decay(double delta, double t, int n);

/// Time-local solution for the populations, rho_14 and rho_23; other entries are zero.
///
/// Populations relax through timelocal_decay(delta, t, 1) and (.., 2); both coherences
/// decay with timelocal_decay(delta, t, 2). Throws std::invalid_argument for delta == 0.
DensityMatrix4 timelocal_solution(const DensityMatrix4& rho0, double delta, double t);

/// Time-local solution at delta = 0, including the rho_12, rho_13, rho_24 and rho_34
/// coherences, which mix pairwise with Gaussian rates 1/2 and 3/2.
DensityMatrix4 timelocal_delta0(const DensityMatrix4& rho0, double t);

/// Undoes the interaction picture: rho_12, rho_13 pick up exp(-2i delta t), rho_24, rho_34
/// exp(+2i delta t); populations, rho_14 and rho_23 are unchanged.
DensityMatrix4 to_schrodinger(const MasterState& state, double delta);

}  // namespace spinstar
