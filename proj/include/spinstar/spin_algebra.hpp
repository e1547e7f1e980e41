#pragma once

// Collective angular-momentum bookkeeping for the two spin-star baths.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace spinstar {

/// Exact half-integer stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator+(HalfInt other) const { return HalfInt(twice_ + other.twice_); }
  constexpr HalfInt operator-(HalfInt other) const { return HalfInt(twice_ - other.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(int shift) const { return HalfInt(twice_ + 2 * shift); }
  constexpr HalfInt operator-(int shift) const { return HalfInt(twice_ - 2 * shift); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Model constants shared by both baths.
///
/// `delta` is half the Ising strength: the qubit-qubit term reads 4*delta*S1z*S2z.
/// Each qubit couples to its bath with alpha/sqrt(N).
struct CouplingParams {
  double alpha = 1.0;
  double delta = 1.0;
  int n_bath = 1;

  /// Throws std::invalid_argument if a field is out of range.
  void validate() const;

  /// Bath coupling alpha/sqrt(N) appearing in front of every ladder term.
  double bath_coupling() const;
};

/// Largest bath for which integer sector multiplicities fit in 64 bits.
inline constexpr int kMaxExactBath = 64;

/// One collective-spin sector: total spin j and its multiplicity nu(N, j).
struct SectorIndex {
  HalfInt j;
  std::uint64_t weight = 0;
};

/// Multiplicity normalised by the bath dimension, nu(N, j) / 2^N.
///
/// Multiplying by (2j+1) gives the probability of finding an infinite-temperature bath in
/// sector j.
struct SectorProbability {
  HalfInt j;
  double weight = 0.0;
};

/// A magnetic state |j, m> of one bath.
struct SectorState {
  HalfInt j;
  HalfInt m;

  bool is_valid() const;
  /// Throws std::invalid_argument unless |m| <= j and j - m is an integer.
  void validate() const;
};

enum class LadderOrder {
  plus_minus,  // J+ J-
  minus_plus,  // J- J+
};

/// Sectors j = kappa, kappa+1, ..., N/2 with exact multiplicities.
///
/// Rejects N < 1 and N > kMaxExactBath.
std::vector<SectorIndex> sector_weights(int n_bath);

/// Same enumeration as sector_weights with nu/2^N in floating point; works for any N >= 1.
std::vector<SectorProbability> sector_probabilities(int n_bath);

/// Eigenvalue of J+J- or J-J+ on |j, m>.
double ladder_eigen(SectorState state, LadderOrder order);

/// The pair delta^2 + (alpha^2/N)(sqrt(a) +- sqrt(b))^2.
struct MFactors {
  double plus = 0.0;
  double minus = 0.0;
};

/// a and b are eigenvalues of the ordered ladder products of the two baths.
MFactors m_factors(const CouplingParams& params, double a, double b);

}  // namespace spinstar
