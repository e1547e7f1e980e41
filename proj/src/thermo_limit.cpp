#include "spinstar/thermo_limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "spinstar/parallel.hpp"
#include "spinstar/quadrature.hpp"
#include "spinstar/special_functions.hpp"

namespace spinstar {
namespace {

using std::numbers::pi;
const double kSqrtPi = std::sqrt(pi);

// Cutoffs past which the densities are below 1e-19.
constexpr double kMuMax = 7.0;
constexpr double kEtaMax = 5.5;
constexpr double kRadiusMax = 5.0;

constexpr double kMaxPanel = 0.25;

void check_delta(double delta, const char* who) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::invalid_argument(std::string(who) + ": delta must be finite and non-negative");
}

double oscillation_panel(double t) { return std::min(pi / (4.0 * std::max(1.0, std::abs(t))), kMaxPanel); }

// sin(t sqrt w) / sqrt w, continuous at w = 0.
double sin_over_root(double t, double w, double root) { return w > 0.0 ? std::sin(t * root) / root : t; }

// Nodes resolving both the oscillation and the delta-wide feature of x^2/(delta^2 + x^2) at the origin.
quad::NodeSet feature_nodes(double upper, double delta, double t) {
  const double scale = std::max(delta, 0.005);
  return quad::panel_nodes(0.0, upper, oscillation_panel(t), 40.0 * scale, 0.5 * scale);
}

struct Family {
  double lambda = 0.0;
  double upsilon = 0.0;
  double xi = 0.0;
};

template <class Density>
Family average_family(Density density, double upper, double factor, double delta, double t) {
  const quad::NodeSet nodes = feature_nodes(upper, delta, t);
  const double d2 = delta * delta;
  Family out;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double x = nodes.x[i];
    const double weight = factor * nodes.w[i] * density(x);
    const double w = d2 + x * x;
    const double s = std::sin(t * std::sqrt(w));
    const double c = std::cos(t * std::sqrt(w));
    const double frac = w > 0.0 ? x * x / w : 1.0;
    out.lambda += weight * frac * s * s;
    out.xi += weight * (1.0 - frac) * s * s;
    out.upsilon += weight * c * c;
  }
  return out;
}

double psi_integral(double delta, double t, PsiForm form) {
  const quad::NodeSet nodes = quad::panel_nodes(0.0, kRadiusMax, oscillation_panel(t));
  const std::size_t n = nodes.x.size();
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) weight[i] = nodes.w[i] * f_density(nodes.x[i]);

  const double d2 = delta * delta;
  auto kernel = [&](double r, double s) {
    const double a = d2 + (r + s) * (r + s);
    const double b = d2 + (r - s) * (r - s);
    const double ra = std::sqrt(a);
    const double rb = std::sqrt(b);
    const double cos_part = std::cos(t * ra) * std::cos(t * rb);
    if (d2 == 0.0) return cos_part;
    if (form == PsiForm::consistent) return cos_part + d2 * sin_over_root(t, a, ra) * sin_over_root(t, b, rb);
    const double sa = a > 0.0 ? std::sin(t * ra) / a : 0.0;
    const double sb = b > 0.0 ? std::sin(t * rb) / b : 0.0;
    return cos_part + d2 * sa * sb;
  };

  // The kernel is symmetric in (r, s): sum the lower triangle twice plus the diagonal.
  std::vector<double> rows(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double acc = 0.5 * weight[i] * kernel(nodes.x[i], nodes.x[i]);
    for (std::size_t j = 0; j < i; ++j) acc += weight[j] * kernel(nodes.x[i], nodes.x[j]);
    rows[i] = 2.0 * weight[i] * acc;
  });
  double total = 0.0;
  for (double v : rows) total += v;
  return total;
}

struct LongTime {
  double lambda_plus;
  double lambda_minus;
  double xi_plus;
  double xi_minus;
};

LongTime long_time(double delta) {
  // sin^2 averages to 1/2; the t = 0 node set resolves the delta-wide feature at the origin.
  const quad::NodeSet mu_nodes = feature_nodes(kMuMax, delta, 0.0);
  const quad::NodeSet eta_nodes = feature_nodes(kEtaMax, delta, 0.0);
  const double d2 = delta * delta;
  auto frac = [d2](double x) { return d2 + x * x > 0.0 ? x * x / (d2 + x * x) : 1.0; };
  LongTime out{};
  for (std::size_t i = 0; i < mu_nodes.x.size(); ++i) {
    const double w = 0.5 * mu_nodes.w[i] * q_density(mu_nodes.x[i]);
    const double f = frac(mu_nodes.x[i]);
    out.lambda_plus += w * f;
    out.xi_plus += w * (1.0 - f);
  }
  for (std::size_t i = 0; i < eta_nodes.x.size(); ++i) {
    const double w = eta_nodes.w[i] * r_density(eta_nodes.x[i]);
    const double f = frac(eta_nodes.x[i]);
    out.lambda_minus += w * f;
    out.xi_minus += w * (1.0 - f);
  }
  return out;
}

void check_order(int order) {
  if (order < 0 || order > kMaxMomentOrder)
    throw std::domain_error("moment: order must be in [0, " + std::to_string(kMaxMomentOrder) + "]");
}

}  // namespace

double f_density(double r) {
  if (r < 0.0) throw std::domain_error("f_density: r must be non-negative");
  return 4.0 * r * std::exp(-2.0 * r * r);
}

double q_density(double mu) {
  if (mu < 0.0) throw std::domain_error("q_density: mu must be non-negative");
  const double v =
      2.0 * mu * std::exp(-2.0 * mu * mu) - kSqrtPi * (1.0 - 2.0 * mu * mu) * std::erf(mu) * std::exp(-mu * mu);
  return std::max(0.0, v);
}

double r_density(double eta) {
  const double x = std::abs(eta);
  const double v = 0.5 * (2.0 * x * std::exp(-2.0 * x * x) + kSqrtPi * (1.0 - 2.0 * x * x) * std::erfc(x) * std::exp(-x * x));
  return std::max(0.0, v);
}

LimitFunctions limit_functions(double delta, double t, PsiForm form) {
  check_delta(delta, "limit_functions");
  if (!std::isfinite(t)) throw std::invalid_argument("limit_functions: t must be finite");

  const Family plus = average_family([](double x) { return q_density(x); }, kMuMax, 1.0, delta, t);
  const Family minus = average_family([](double x) { return r_density(x); }, kEtaMax, 2.0, delta, t);

  LimitFunctions f;
  f.t = t;
  f.delta = delta;
  f.lambda_plus = plus.lambda;
  f.upsilon_plus = plus.upsilon;
  f.xi_plus = plus.xi;
  f.lambda_minus = minus.lambda;
  f.upsilon_minus = minus.upsilon;
  f.xi_minus = minus.xi;
  f.psi = psi_integral(delta, t, form);
  return f;
}

DensityMatrix4 rho_limit_singlet(const LimitFunctions& f) {
  const double edge = 0.25 * (f.lambda_plus + f.lambda_minus);
  const double middle = 0.25 * (f.upsilon_plus + f.upsilon_minus + f.xi_plus + f.xi_minus);
  const double coherence = -0.125 * (f.upsilon_plus + f.upsilon_minus + f.xi_plus + f.xi_minus + 2.0 * f.psi);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = edge;
  m(3, 3) = edge;
  m(1, 1) = middle;
  m(2, 2) = middle;
  m(1, 2) = coherence;
  m(2, 1) = coherence;
  return DensityMatrix4::unchecked(m);
}

DensityMatrix4 rho_limit_singlet(double delta, double t) { return rho_limit_singlet(limit_functions(delta, t)); }

AsymptoticState asymptotics(double delta) {
  check_delta(delta, "asymptotics");
  const LongTime lt = long_time(delta);
  const double plus_sum = lt.lambda_plus + lt.xi_plus;
  const double minus_sum = lt.lambda_minus + lt.xi_minus;
  if (std::abs(plus_sum - 0.5) > kAsymptoticIdentityTolerance ||
      std::abs(minus_sum - 0.5) > kAsymptoticIdentityTolerance)
    throw std::runtime_error("asymptotics: lambda + xi = 1/2 identity violated at delta = " + std::to_string(delta));

  AsymptoticState s;
  s.delta = delta;
  s.lambda_plus = lt.lambda_plus;
  s.lambda_minus = lt.lambda_minus;
  s.xi_plus = lt.xi_plus;
  s.xi_minus = lt.xi_minus;
  s.pi_value = lt.lambda_plus + lt.lambda_minus;
  s.c_infinity = std::max(0.0, (2.0 - 3.0 * s.pi_value) / 4.0);

  const double p = s.pi_value;
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = p / 4.0;
  m(3, 3) = p / 4.0;
  m(1, 1) = (2.0 - p) / 4.0;
  m(2, 2) = (2.0 - p) / 4.0;
  m(1, 2) = -(2.0 - p) / 8.0;
  m(2, 1) = -(2.0 - p) / 8.0;
  s.rho_infinity = DensityMatrix4::unchecked(m);
  return s;
}

double pi_value(double delta) {
  check_delta(delta, "pi_value");
  const LongTime lt = long_time(delta);
  return lt.lambda_plus + lt.lambda_minus;
}

double critical_delta() {
  std::uintmax_t iterations = 100;
  const auto [lo, hi] = boost::math::tools::toms748_solve([](double d) { return pi_value(d) - 2.0 / 3.0; }, 0.1, 1.0,
                                                          boost::math::tools::eps_tolerance<double>(45), iterations);
  return 0.5 * (lo + hi);
}

double moment(MomentKind kind, int order) {
  check_order(order);
  const int n = order / 2;
  const double n_fact = std::tgamma(n + 1.0);
  const double even_mu = n_fact / std::exp2(n) * (1.0 + std::exp2(n + 1) * n * hyp2f1_special(n));

  if (kind == MomentKind::eta) {
    if (order % 2 == 1) return 0.0;
    return even_mu - n * kSqrtPi * gamma_fn(n + 0.5);
  }
  if (order % 2 == 0) return even_mu;
  return gamma_fn(n + 1.5) / std::exp2(n) *
         (1.0 / std::numbers::sqrt2 + std::exp2(n) * (2.0 * n + 1.0) * hyp2f1_special_half(n));
}

double moment_quadrature(MomentKind kind, int order) {
  check_order(order);
  const double upper = 7.0 + std::sqrt(static_cast<double>(order));
  if (kind == MomentKind::mu)
    return quad::integrate_adaptive([&](double x) { return std::pow(x, order) * q_density(x); }, 0.0, upper);
  auto integrand = [&](double x) { return std::pow(x, order) * r_density(x); };
  return quad::integrate_adaptive(integrand, -upper, 0.0) + quad::integrate_adaptive(integrand, 0.0, upper);
}

}  // namespace spinstar
