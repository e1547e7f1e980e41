#pragma once

namespace spinstar {

/// Largest index accepted by the hypergeometric special values.
inline constexpr int kMaxHypergeometricIndex = 30;

double erf_fn(double x);

/// Gamma function for x > 0; throws std::domain_error otherwise.
double gamma_fn(double x);

/// 2F1(n+1, 1/2; 3/2; -1) for n = 0..kMaxHypergeometricIndex.
///
/// Forward recursion 2(n+1) g_{n+1} = (2n+1) g_n + 2^-(n+1) from g_0 = pi/4.
double hyp2f1_special(int n);

/// 2F1(n+3/2, 1/2; 3/2; -1), the half-integer chain of the same recursion, from 1/sqrt(2).
double hyp2f1_special_half(int n);

}  // namespace spinstar
