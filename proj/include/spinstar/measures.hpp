#pragma once

#include "spinstar/density_matrix.hpp"

namespace spinstar {

/// Wootters concurrence, from the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const DensityMatrix4& rho);

/// Closed form for X states (only diagonal, rho_14 and rho_23 non-zero):
/// 2 max{0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)}.
double concurrence_x_state(const DensityMatrix4& rho);

/// tr(rho^2), clamped to the physical range.
double purity(const DensityMatrix4& rho);

}  // namespace spinstar
