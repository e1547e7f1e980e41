#include "spinstar/master_eq.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinstar {
namespace {

constexpr double kTraceDrift = 1e-8;

// Upper-triangle entries carried by the solver, in this order.
constexpr std::array<std::array<int, 2>, 10> kEntries{
    {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};
enum : int { r11, r12, r13, r14, r22, r23, r24, r33, r34, r44 };

using Vec10 = Eigen::Matrix<cplx, 10, 1>;
using Mat10 = Eigen::Matrix<cplx, 10, 10>;

Vec10 pack(const Matrix4c& m) {
  Vec10 y;
  for (int e = 0; e < 10; ++e) y(e) = m(kEntries[e][0], kEntries[e][1]);
  return y;
}

Matrix4c unpack(const Vec10& y) {
  Matrix4c m;
  for (int e = 0; e < 10; ++e) {
    const auto [i, k] = kEntries[e];
    m(i, k) = y(e);
    m(k, i) = std::conj(y(e));
  }
  for (int i = 0; i < 4; ++i) m(i, i) = m(i, i).real();
  return m;
}

// Memory kernel K(t, s) applied to y(s), for alpha = 1.
Vec10 apply_kernel(double delta, double t, double s, const Vec10& y) {
  const double c = std::cos(2.0 * delta * (t - s));
  const cplx diff = std::polar(1.0, 2.0 * delta * (t - s));
  const cplx sum = std::polar(1.0, 2.0 * delta * (t + s));
  Vec10 out;
  out(r11) = c * (-2.0 * y(r11) + y(r22) + y(r33));
  out(r22) = c * (-2.0 * y(r22) + y(r11) + y(r44));
  out(r33) = c * (-2.0 * y(r33) + y(r11) + y(r44));
  out(r44) = c * (-2.0 * y(r44) + y(r22) + y(r33));
  out(r14) = -2.0 * c * y(r14);
  out(r23) = -2.0 * c * y(r23);
  out(r12) = -2.0 * diff * y(r12) + sum * y(r34);
  out(r13) = -2.0 * diff * y(r13) + sum * y(r24);
  out(r24) = -2.0 * std::conj(diff) * y(r24) + std::conj(sum) * y(r13);
  out(r34) = -2.0 * std::conj(diff) * y(r34) + std::conj(sum) * y(r12);
  return out;
}

Mat10 kernel_matrix(double delta, double t, double s) {
  Mat10 k;
  for (int e = 0; e < 10; ++e) k.col(e) = apply_kernel(delta, t, s, Vec10::Unit(e));
  return k;
}

double step_of(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 0.0) throw std::invalid_argument("volterra_solve: grid must start at t = 0");
  if (grid.size() == 1) return 0.0;
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw std::invalid_argument("volterra_solve: grid must be increasing");
  if (h > kMaxVolterraStep * (1.0 + 1e-12))
    throw std::invalid_argument("volterra_solve: step " + std::to_string(h) + " exceeds the maximum of 0.01");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double expected = h * static_cast<double>(k);
    if (!(grid[k] > grid[k - 1]) || std::abs(grid[k] - expected) > 1e-9 * std::max(1.0, expected))
      throw std::invalid_argument("volterra_solve: grid is not uniform at index " + std::to_string(k));
  }
  return h;
}

void check_state_args(double delta, double t, const char* who) {
  if (!std::isfinite(delta)) throw std::invalid_argument(std::string(who) + ": delta must be finite");
  if (!std::isfinite(t)) throw std::invalid_argument(std::string(who) + ": t must be finite");
}

// Population solution shared by the delta > 0 and delta = 0 forms.
void fill_timelocal(const Matrix4c& r0, double slow, double fast, Matrix4c& m) {
  auto p = [&](int i) { return r0(i, i).real(); };
  auto population = [&](int i, int partner_sum, int partner_diff) {
    return 0.25 * (1.0 + (-1.0 + 2.0 * (p(i) + p(partner_sum))) * slow + 2.0 * (p(i) - p(partner_diff)) * fast);
  };
  m(0, 0) = population(0, 3, 3);
  m(1, 1) = population(1, 2, 2);
  m(2, 2) = population(2, 1, 1);
  m(3, 3) = population(3, 0, 0);
  m(0, 3) = r0(0, 3) * fast;
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = r0(1, 2) * fast;
  m(2, 1) = std::conj(m(1, 2));
}

}  // namespace

std::vector<double> uniform_grid(double t_end, int steps) {
  if (steps < 1) throw std::invalid_argument("uniform_grid: steps must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("uniform_grid: t_end must be positive");
  std::vector<double> grid(steps + 1);
  const double h = t_end / steps;
  for (int k = 0; k <= steps; ++k) grid[k] = h * k;
  return grid;
}

std::vector<MasterState> volterra_solve(const DensityMatrix4& rho0, double delta, const std::vector<double>& t_grid) {
  rho0.validate(kInputTolerance);
  if (!std::isfinite(delta)) throw std::invalid_argument("volterra_solve: delta must be finite");
  const double h = step_of(t_grid);

  std::vector<Vec10> y{pack(rho0.matrix())};
  y.reserve(t_grid.size());
  std::vector<MasterState> out{{0.0, rho0}};
  out.reserve(t_grid.size());
  Vec10 z = Vec10::Zero();  // derivative at the latest node

  for (std::size_t n = 1; n < t_grid.size(); ++n) {
    const double t = t_grid[n];
    Vec10 history = 0.5 * apply_kernel(delta, t, 0.0, y[0]);
    for (std::size_t j = 1; j < n; ++j) history += apply_kernel(delta, t, t_grid[j], y[j]);
    history *= h;

    const Mat10 k_now = kernel_matrix(delta, t, t);
    const Mat10 lhs = Mat10::Identity() - (0.25 * h * h) * k_now;
    const Vec10 rhs = y[n - 1] + 0.5 * h * (z + history);
    const Vec10 next = lhs.partialPivLu().solve(rhs);
    z = history + 0.5 * h * (k_now * next);

    const double trace = (next(r11) + next(r22) + next(r33) + next(r44)).real();
    if (std::abs(trace - 1.0) > kTraceDrift)
      throw std::runtime_error("volterra_solve: trace drifted to " + std::to_string(trace));
    y.push_back(next);
    out.push_back({t, DensityMatrix4::unchecked(unpack(next))});
  }
  return out;
}

double timelocal_decay(double delta, double t, int n) {
  if (n <= 0) throw std::invalid_argument("timelocal_decay: n must be positive");
  if (delta == 0.0) return std::exp(-2.0 * t * t / n);
  // cos(2x) - 1 = -2 sin^2(x) avoids cancellation for small delta t
  const double s = std::sin(delta * t);
  return std::exp(-2.0 * s * s / (n * delta * delta));
}

DensityMatrix4 timelocal_solution(const DensityMatrix4& rho0, double delta, double t) {
  check_state_args(delta, t, "timelocal_solution");
  if (delta == 0.0) throw std::invalid_argument("timelocal_solution: delta = 0 needs timelocal_delta0");
  rho0.validate(kInputTolerance);
  Matrix4c m = Matrix4c::Zero();
  fill_timelocal(rho0.matrix(), timelocal_decay(delta, t, 1), timelocal_decay(delta, t, 2), m);
  return DensityMatrix4::unchecked(m);
}

DensityMatrix4 timelocal_delta0(const DensityMatrix4& rho0, double t) {
  check_state_args(0.0, t, "timelocal_delta0");
  rho0.validate(kInputTolerance);
  const Matrix4c& r0 = rho0.matrix();
  Matrix4c m = Matrix4c::Zero();
  fill_timelocal(r0, timelocal_decay(0.0, t, 1), timelocal_decay(0.0, t, 2), m);

  const double slow = std::exp(-0.5 * t * t);
  const double fast = std::exp(-1.5 * t * t);
  auto pair = [&](int a0, int a1, int b0, int b1) {
    const cplx a = r0(a0, a1);
    const cplx b = r0(b0, b1);
    m(a0, a1) = 0.5 * ((a + b) * slow + (a - b) * fast);
    m(b0, b1) = 0.5 * ((a + b) * slow - (a - b) * fast);
    m(a1, a0) = std::conj(m(a0, a1));
    m(b1, b0) = std::conj(m(b0, b1));
  };
  pair(0, 1, 2, 3);
  pair(0, 2, 1, 3);
  return DensityMatrix4::unchecked(m);
}

DensityMatrix4 to_schrodinger(const MasterState& state, double delta) {
  Matrix4c m = state.rho_tilde.matrix();
  const cplx phase = std::polar(1.0, -2.0 * delta * state.t);
  for (auto [i, k] : {std::array<int, 2>{0, 1}, {0, 2}}) m(i, k) *= phase;
  for (auto [i, k] : {std::array<int, 2>{1, 3}, {2, 3}}) m(i, k) *= std::conj(phase);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < i; ++k) m(i, k) = std::conj(m(k, i));
  return DensityMatrix4::unchecked(m);
}

}  // namespace spinstar
