#include "spinstar/spin_algebra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinstar {

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void CouplingParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument("alpha must be finite and non-negative");
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
  if (n_bath < 1) throw std::invalid_argument("n_bath must be at least 1");
}

double CouplingParams::bath_coupling() const {
  return alpha / std::sqrt(static_cast<double>(n_bath));
}

bool SectorState::is_valid() const {
  return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() && (j - m).is_integer();
}

void SectorState::validate() const {
  if (!is_valid())
    throw std::invalid_argument("invalid sector state j=" + j.to_string() + " m=" + m.to_string());
}

std::vector<SectorIndex> sector_weights(int n_bath) {
  if (n_bath < 1) throw std::invalid_argument("sector_weights: N must be at least 1");
  if (n_bath > kMaxExactBath)
    throw std::invalid_argument("sector_weights: N=" + std::to_string(n_bath) +
                                " exceeds the exact-integer limit " +
                                std::to_string(kMaxExactBath));

  // Pascal row N; every entry of row 64 is below 2^63.
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= n_bath; ++n) {
    std::vector<std::uint64_t> next(n + 1, 1);
    for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }

  std::vector<SectorIndex> sectors;
  // twice_j runs over N mod 2, N mod 2 + 2, ..., N; k = N/2 - j = (N - twice_j) / 2.
  for (int twice_j = n_bath % 2; twice_j <= n_bath; twice_j += 2) {
    const int k = (n_bath - twice_j) / 2;
    const std::uint64_t upper = row[k];
    const std::uint64_t lower = k >= 1 ? row[k - 1] : 0;
    sectors.push_back({HalfInt::from_twice(twice_j), upper - lower});
  }
  return sectors;
}

std::vector<SectorProbability> sector_probabilities(int n_bath) {
  if (n_bath < 1) throw std::invalid_argument("sector_probabilities: N must be at least 1");

  std::vector<SectorProbability> out;
  if (n_bath <= kMaxExactBath) {
    const double scale = std::ldexp(1.0, -n_bath);
    for (const auto& s : sector_weights(n_bath))
      out.push_back({s.j, static_cast<double>(s.weight) * scale});
    return out;
  }

  // nu(N, j) = C(N, k) (2j+1) / (N/2 + j + 1) with k = N/2 - j.
  const double n = n_bath;
  const double log_norm = std::lgamma(n + 1.0) - n * std::log(2.0);
  for (int twice_j = n_bath % 2; twice_j <= n_bath; twice_j += 2) {
    const double j = 0.5 * twice_j;
    const double k = 0.5 * n - j;
    const double log_binom = log_norm - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    const double weight = std::exp(log_binom) * (2.0 * j + 1.0) / (0.5 * n + j + 1.0);
    out.push_back({HalfInt::from_twice(twice_j), weight});
  }
  return out;
}

double ladder_eigen(SectorState state, LadderOrder order) {
  state.validate();
  const long tj = state.j.twice();
  const long tm = state.m.twice();
  // (j+m)(j-m+1) = (2j+2m)(2j-2m+2)/4, and the mirrored product for J-J+.
  const long product = order == LadderOrder::plus_minus ? (tj + tm) * (tj - tm + 2)
                                                        : (tj - tm) * (tj + tm + 2);
  return static_cast<double>(product / 4);
}

MFactors m_factors(const CouplingParams& params, double a, double b) {
  const double g2 = params.alpha * params.alpha / static_cast<double>(params.n_bath);
  const double ra = std::sqrt(a);
  const double rb = std::sqrt(b);
  const double d2 = params.delta * params.delta;
  return {d2 + g2 * (ra + rb) * (ra + rb), d2 + g2 * (ra - rb) * (ra - rb)};
}

}  // namespace spinstar
