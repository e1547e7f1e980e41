#pragma once

// Infinite-bath limit of the singlet dynamics. Time is measured in units of 1/alpha.

#include "spinstar/density_matrix.hpp"

namespace spinstar {

/// Density 4 r exp(-2 r^2) of the scaled collective spin of one bath.
double f_density(double r);
/// Density of mu = r + s for two independent baths, r, s >= 0.
double q_density(double mu);
/// Density of eta = r - s on the real line; even in eta.
double r_density(double eta);

/// The seven integrals that build the limiting reduced state at one (delta, t).
///
/// The plus family is averaged over mu with Q, the minus family over eta with R:
/// lambda = <x^2/w sin^2(t sqrt w)>, upsilon = <cos^2(t sqrt w)>, xi = <delta^2/w sin^2(t sqrt w)>
/// with w = delta^2 + x^2. psi is the joint (r, s) average of
/// cos(t sqrt A) cos(t sqrt B) + delta^2 sin(t sqrt A)/sqrt A sin(t sqrt B)/sqrt B,
/// A = delta^2 + (r+s)^2, B = delta^2 + (r-s)^2.
struct LimitFunctions {
  double t = 0.0;
  double delta = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double upsilon_plus = 1.0;
  double upsilon_minus = 1.0;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double psi = 1.0;
};

/// Form of the delta^2 term in psi. `unsquared_denominators` divides the two sines by A and B
/// instead of sqrt A and sqrt B; it does not reproduce finite-N dynamics and exists only for
/// comparison.
enum class PsiForm { consistent, unsquared_denominators };

/// Throws std::invalid_argument for negative or non-finite delta, or non-finite t.
LimitFunctions limit_functions(double delta, double t, PsiForm form = PsiForm::consistent);

/// Reduced state of a singlet in the infinite-bath limit.
DensityMatrix4 rho_limit_singlet(const LimitFunctions& f);
DensityMatrix4 rho_limit_singlet(double delta, double t);

/// Long-time state, from time-averaged integrands (sin^2 -> 1/2).
struct AsymptoticState {
  double delta = 0.0;
  /// lambda_plus + lambda_minus at t -> infinity.
  double pi_value = 0.0;
  /// max{0, (2 - 3 pi_value) / 4}.
  double c_infinity = 0.0;
  DensityMatrix4 rho_infinity;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
};

/// Tolerance on lambda(inf) + xi(inf) = 1/2 checked inside `asymptotics`.
inline constexpr double kAsymptoticIdentityTolerance = 1e-9;

/// Throws std::invalid_argument for negative delta and std::runtime_error if the
/// lambda + xi = 1/2 identity fails.
AsymptoticState asymptotics(double delta);

double pi_value(double delta);

/// Coupling at which pi_value crosses 2/3 and the asymptotic concurrence switches on.
double critical_delta();

enum class MomentKind { mu, eta };

inline constexpr int kMaxMomentOrder = 30;

/// Closed-form raw moment <x^order> of mu (density Q) or eta (density R).
double moment(MomentKind kind, int order);

/// The same moment by direct quadrature of x^order times the density.
double moment_quadrature(MomentKind kind, int order);

}  // namespace spinstar
