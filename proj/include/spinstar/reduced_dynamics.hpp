#pragma once

// Reduced two-qubit state after tracing both infinite-temperature baths.

#include "spinstar/density_matrix.hpp"
#include "spinstar/spin_algebra.hpp"

namespace spinstar {

/// Sectors whose probability (2j+1) nu / 2^N falls below this are dropped from the bath trace.
/// Only reachable for large baths; the discarded trace is below N times this value.
inline constexpr double kSectorCutoff = 1e-16;

/// rho(t) for an arbitrary initial two-qubit state, from the closed-form propagator.
DensityMatrix4 evolve(const DensityMatrix4& rho0, const CouplingParams& params, double t);

/// rho(t) for a Bell initial state using only the five non-zero trace formulas.
DensityMatrix4 evolve_bell(BellState which, const CouplingParams& params, double t);

}  // namespace spinstar
