#pragma once

// Closed-form counts and moments for decompressed k-ary chains.

#include "chainlab/chain.hpp"
#include "chainlab/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <map>
#include <utility>
#include <vector>

namespace chainlab {

// Number of decompressed internal nodes on compression level `level`, summed
// over all k-ary chains of size n:
//   (n!)^(k-1) * (k-1)^(level-1) * C(n, level) / level!
inline BigInt level_count_total(unsigned level, unsigned n, unsigned k) {
  require_arity(k);
  if (level == 0 || level > n) return 0;
  BigInt r = chain_count(n, k) * ipow(BigInt(k - 1), level - 1) * binomial(n, level);
  return r / factorial(level);  // exact: level! divides n!
}

// Integer weights w_l = n!/l! * C(n,l) * (k-1)^(l-1) for l = 1..n (index 0
// unused). They are proportional to the level distribution and satisfy
// w_{l+1} = w_l * (k-1)(n-l) / (l+1)^2 with exact division.
inline std::vector<BigInt> level_weights(unsigned n, unsigned k) {
  require_arity(k);
  std::vector<BigInt> w(n + 1, 0);
  if (n == 0) return w;
  w[1] = factorial(n) * n;
  for (unsigned l = 1; l < n; ++l) {
    w[l + 1] = w[l] * (k - 1) * (n - l);
    w[l + 1] /= BigInt(l + 1) * (l + 1);
  }
  return w;
}

inline BigInt total_decompressed_nodes(unsigned n, unsigned k) {
  BigInt s = 0;
  for (unsigned l = 1; l <= n; ++l) s += level_count_total(l, n, k);
  return s;
}

// E(X_n) = sum_{l=1..n} (k-1)^(l-1) C(n,l) / l!, accumulated through the term
// ratio (k-1)(n-l)/(l+1)^2.
inline Rational expected_size_exact(unsigned n, unsigned k) {
  require_arity(k);
  if (n == 0) return Rational(0);
  // Sum the integer weights and divide once by n!.
  BigInt s = 0;
  for (const auto& w : level_weights(n, k)) s += w;
  return Rational(s, factorial(n));
}

// Same sum evaluated in floating point at `precision_bits`; used where the
// exact rational becomes unwieldy (large n). All terms are positive, so there
// is no cancellation.
inline Real expected_size_real(unsigned n, unsigned k,
                               unsigned precision_bits = kDefaultPrecisionBits) {
  require_arity(k);
  PrecisionGuard guard(precision_bits);
  Real sum = 0;
  if (n == 0) return sum;
  Real term = n;
  sum = term;
  for (unsigned l = 1; l < n; ++l) {
    term *= Real(k - 1) * (n - l);
    term /= Real(l + 1) * (l + 1);
    sum += term;
  }
  return sum;
}

// e^{2 sqrt((k-1)n)} / (2 sqrt(e^{k-1} pi) (k-1)^{5/4} n^{1/4})
inline Real expected_size_asymptotic(unsigned n, unsigned k,
                                     unsigned precision_bits = kDefaultPrecisionBits) {
  require_arity(k);
  if (n == 0) throw std::invalid_argument("asymptotic form needs n >= 1");
  PrecisionGuard guard(precision_bits);
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Real km1 = k - 1;
  const Real nn = n;
  const Real pi = boost::math::constants::pi<Real>();
  const Real numer = exp(2 * sqrt(km1 * nn));
  const Real denom = 2 * sqrt(exp(km1) * pi) * pow(km1, Real(5) / 4) * pow(nn, Real(1) / 4);
  return numer / denom;
}

// exact / asymptotic; the exact side is the rational for n <= 500 and the
// high-precision sum beyond.
inline Real asymptotic_ratio(unsigned n, unsigned k,
                             unsigned precision_bits = kDefaultPrecisionBits) {
  PrecisionGuard guard(precision_bits);
  Real exact = n <= 500 ? Real(expected_size_exact(n, k))
                        : expected_size_real(n, k, precision_bits);
  return exact / expected_size_asymptotic(n, k, precision_bits);
}

struct LevelMoments {
  Rational mean;
  Rational variance;
};

inline LevelMoments level_moments(unsigned n, unsigned k) {
  if (n == 0) throw std::invalid_argument("level moments need n >= 1");
  const auto w = level_weights(n, k);
  BigInt s0 = 0, s1 = 0, s2 = 0;
  for (unsigned l = 1; l <= n; ++l) {
    s0 += w[l];
    s1 += w[l] * l;
    s2 += w[l] * l * l;
  }
  // variance = (s2 s0 - s1^2) / s0^2
  return {Rational(s1, s0), Rational(s2 * s0 - s1 * s1, s0 * s0)};
}

// Laguerre polynomial L_n(x) by the three-term recurrence, as exact
// coefficients of 1, x, x^2, ...
inline std::vector<Rational> laguerre(unsigned n) {
  std::vector<Rational> prev{1};      // L_0
  if (n == 0) return prev;
  std::vector<Rational> cur{1, -1};   // L_1 = 1 - x
  for (unsigned m = 1; m < n; ++m) {
    // (m+1) L_{m+1} = (2m+1-x) L_m - m L_{m-1}
    std::vector<Rational> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += Rational(2 * m + 1) * cur[i];
      next[i + 1] -= cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= Rational(m) * prev[i];
    for (auto& c : next) c /= m + 1;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Coefficients of n! (L_n(-q) - 1) in powers of q.
inline std::vector<Rational> laguerre_level_polynomial(unsigned n) {
  auto p = laguerre(n);
  const Rational nf(factorial(n));
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j % 2 == 1) p[j] = -p[j];
    p[j] *= nf;
  }
  p[0] -= nf;
  return p;
}

inline bool laguerre_check(unsigned n) {
  const auto p = laguerre_level_polynomial(n);
  if (p[0] != 0) return false;
  for (unsigned l = 1; l < p.size(); ++l) {
    if (p[l] != Rational(level_count_total(l, n, 2))) return false;
  }
  return true;
}

inline BigInt fuss_catalan(unsigned n, unsigned k) {
  require_arity(k);
  BigInt r = binomial(k * n, n);
  return r / ((k - 1) * n + 1);
}

}  // namespace chainlab
