#pragma once

// Panel quadrature helpers shared by the thermodynamic-limit integrals.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spinstar::quad {

inline constexpr int kGaussPoints = 10;

/// Gauss-Legendre nodes and weights laid over consecutive panels.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

/// Panels of width at most `max_width` on [a, b]; the first `fine_length` of the
/// interval uses `fine_width` instead when that is smaller.
inline NodeSet panel_nodes(double a, double b, double max_width, double fine_length = 0.0,
                           double fine_width = 0.0) {
  using rule = boost::math::quadrature::gauss<double, kGaussPoints>;
  const auto& abscissa = rule::abscissa();
  const auto& weights = rule::weights();

  std::vector<double> edges{a};
  auto fill = [&](double to, double width) {
    const double from = edges.back();
    if (to <= from) return;
    const int panels = std::max(1, static_cast<int>(std::ceil((to - from) / width)));
    for (int p = 1; p <= panels; ++p) edges.push_back(from + (to - from) * p / panels);
  };
  if (fine_length > 0.0 && fine_width > 0.0 && fine_width < max_width)
    fill(std::min(b, a + fine_length), fine_width);
  fill(b, max_width);

  NodeSet nodes;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    // boost stores the non-negative half of a symmetric rule
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double off = half * abscissa[i];
      nodes.x.push_back(mid + off);
      nodes.w.push_back(half * weights[i]);
      if (abscissa[i] != 0.0) {
        nodes.x.push_back(mid - off);
        nodes.w.push_back(half * weights[i]);
      }
    }
  }
  return nodes;
}

/// Adaptive Gauss-Kronrod on unit-width (or narrower) panels of [a, b].
template <class F>
double integrate_adaptive(F&& f, double a, double b, double panel_width = 1.0,
                          double tolerance = 1e-14) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * p / panels;
    const double hi = a + (b - a) * (p + 1) / panels;
    total += rule::integrate(f, lo, hi, 15, tolerance);
  }
  return total;
}

}  // namespace spinstar::quad
