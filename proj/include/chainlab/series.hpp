#pragma once

// Truncated power series with exact rational coefficients, and the
// generating-function constructions for k-ary chains built on them.
//
// Coefficients are analytic: a series holds g_0..g_N of sum g_n z^n. The
// d-exponential convention (g_n = f_n / (n!)^d) appears only in
// counts_to_series() and series_to_counts().

#include "chainlab/numeric.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

class TruncatedSeries {
 public:
  explicit TruncatedSeries(unsigned order = 0) : coeffs_(order + 1, 0) {}
  TruncatedSeries(unsigned order, std::vector<Rational> coeffs)
      : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1, 0);
  }

  static TruncatedSeries constant(unsigned order, const Rational& c) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }
  // z, or zero when order == 0.
  static TruncatedSeries variable(unsigned order) {
    TruncatedSeries s(order);
    if (order >= 1) s.coeffs_[1] = 1;
    return s;
  }

  unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
  Rational& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

namespace detail {
inline void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("series orders differ: " + std::to_string(a.order()) +
                                " vs " + std::to_string(b.order()));
  }
}
}  // namespace detail

inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b);
  TruncatedSeries r = a;
  for (unsigned n = 0; n <= r.order(); ++n) r[n] += b[n];
  return r;
}

inline TruncatedSeries subtract(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b);
  TruncatedSeries r = a;
  for (unsigned n = 0; n <= r.order(); ++n) r[n] -= b[n];
  return r;
}

inline TruncatedSeries scale(const TruncatedSeries& a, const Rational& c) {
  TruncatedSeries r = a;
  for (unsigned n = 0; n <= r.order(); ++n) r[n] *= c;
  return r;
}

inline TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b);
  const unsigned N = a.order();
  TruncatedSeries r(N);
  for (unsigned i = 0; i <= N; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; i + j <= N; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// a / (1 - z): prefix sums.
inline TruncatedSeries geom_divide(const TruncatedSeries& a) {
  TruncatedSeries r = a;
  for (unsigned n = 1; n <= r.order(); ++n) r[n] += r[n - 1];
  return r;
}

// d/dz; the result has the same nominal order but its top coefficient is 0
// (exact only through order N-1).
inline TruncatedSeries differentiate(const TruncatedSeries& a) {
  TruncatedSeries r(a.order());
  for (unsigned n = 1; n <= a.order(); ++n) r[n - 1] = a[n] * n;
  return r;
}

// Antiderivative with constant term 0.
inline TruncatedSeries integrate(const TruncatedSeries& a) {
  TruncatedSeries r(a.order());
  for (unsigned n = 1; n <= a.order(); ++n) r[n] = a[n - 1] / n;
  return r;
}

// exp(a) for a(0) = 0, from e' = a' e: n e_n = sum_{j=1..n} j a_j e_{n-j}.
inline TruncatedSeries exp(const TruncatedSeries& a) {
  if (a[0] != 0) throw std::invalid_argument("exp requires a zero constant term");
  const unsigned N = a.order();
  TruncatedSeries e(N);
  e[0] = 1;
  for (unsigned n = 1; n <= N; ++n) {
    Rational s = 0;
    for (unsigned j = 1; j <= n; ++j) {
      if (a[j] != 0) s += a[j] * e[n - j] * j;
    }
    e[n] = s / n;
  }
  return e;
}

// ---------------------------------------------------------------------------
// d-exponential generating functions

inline TruncatedSeries counts_to_series(const std::vector<BigInt>& counts, unsigned d) {
  if (counts.empty()) throw std::invalid_argument("need at least one count");
  TruncatedSeries s(static_cast<unsigned>(counts.size() - 1));
  BigInt nf = 1;
  for (unsigned n = 0; n < counts.size(); ++n) {
    if (n > 0) nf *= n;
    s[n] = Rational(counts[n], ipow(nf, d));
  }
  return s;
}

class NonIntegerCount : public std::domain_error {
 public:
  NonIntegerCount(unsigned index, const Rational& value)
      : std::domain_error("count " + std::to_string(index) + " is not an integer: " +
                          to_string(value)),
        index_(index) {}
  unsigned index() const { return index_; }

 private:
  unsigned index_;
};

inline std::vector<BigInt> series_to_counts(const TruncatedSeries& s, unsigned d) {
  std::vector<BigInt> counts;
  counts.reserve(s.order() + 1);
  BigInt nf = 1;
  for (unsigned n = 0; n <= s.order(); ++n) {
    if (n > 0) nf *= n;
    Rational f = s[n] * Rational(ipow(nf, d));
    if (!is_integer(f)) throw NonIntegerCount(n, f);
    counts.push_back(boost::multiprecision::numerator(f));
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Symbolic constructions on (k-1)-exponential generating functions

// New root with R as first child and k-1 free pointers: S(z) = z R(z).
inline TruncatedSeries add_root(const TruncatedSeries& r) {
  TruncatedSeries s(r.order());
  for (unsigned n = 0; n < r.order(); ++n) s[n + 1] = r[n];
  return s;
}

// The same construction on raw counts: f'_{n+1} = (n+1)^(k-1) f_n, f'_0 = 0.
inline std::vector<BigInt> add_root_counts(const std::vector<BigInt>& f, unsigned k) {
  std::vector<BigInt> out(f.size() + 1, 0);
  for (unsigned n = 0; n < f.size(); ++n) {
    out[n + 1] = f[n] * ipow(BigInt(n + 1), k - 1);
  }
  return out;
}

// R_+(z) = z R'(z) + R(0)
inline TruncatedSeries pointer_add(const TruncatedSeries& r) {
  TruncatedSeries s(r.order());
  s[0] = r[0];
  for (unsigned n = 1; n <= r.order(); ++n) s[n] = r[n] * n;
  return s;
}

// R_-(z) = integral of (R(z) - R(0)) / z
inline TruncatedSeries pointer_remove(const TruncatedSeries& r) {
  TruncatedSeries s(r.order());
  for (unsigned n = 1; n <= r.order(); ++n) s[n] = r[n] / n;
  return s;
}

// C(z) = 1/(1-z) truncated.
inline TruncatedSeries chain_series(unsigned order) {
  return geom_divide(TruncatedSeries::constant(order, 1));
}

// D_level(z) by iterating D_{l+1} = (k-1)/(1-z) * integral(D_l/(1-z)) from
// D_1 = z/(1-z)^2.
inline TruncatedSeries level_series(unsigned level, unsigned k, unsigned order) {
  if (level == 0) throw std::invalid_argument("level must be >= 1");
  if (k < 2) throw std::invalid_argument("arity k must be >= 2");
  TruncatedSeries d = geom_divide(geom_divide(TruncatedSeries::variable(order)));
  for (unsigned l = 1; l < level; ++l) {
    d = scale(geom_divide(integrate(geom_divide(d))), Rational(k - 1));
  }
  return d;
}

// (k-1)^(level-1) C(n, level) / level!
inline Rational level_coefficient(unsigned level, unsigned n, unsigned k) {
  if (level == 0 || level > n) return 0;
  return Rational(ipow(BigInt(k - 1), level - 1) * binomial(n, level), factorial(level));
}

// ---------------------------------------------------------------------------
// Bivariate series in (z, q): element l is the coefficient of q^l.

using BivariateSeries = std::vector<TruncatedSeries>;

// exp(A) for A with zero q-constant term, using l E_l = sum_{j=1..l} j A_j E_{l-j}.
inline BivariateSeries bivariate_exp(const BivariateSeries& a) {
  if (a.empty()) throw std::invalid_argument("empty bivariate series");
  const unsigned N = a[0].order();
  if (!a[0].is_zero()) {
    throw std::invalid_argument("bivariate exp requires a zero q-constant term");
  }
  BivariateSeries e(a.size(), TruncatedSeries(N));
  e[0] = TruncatedSeries::constant(N, 1);
  for (std::size_t l = 1; l < a.size(); ++l) {
    TruncatedSeries s(N);
    for (std::size_t j = 1; j <= l; ++j) {
      if (a[j].is_zero()) continue;
      s = add(s, scale(multiply(a[j], e[l - j]), Rational(static_cast<unsigned>(j))));
    }
    e[l] = scale(s, Rational(1, static_cast<unsigned>(l)));
  }
  return e;
}

// D(z,q) = (e^{(k-1) q z/(1-z)} - 1) / ((k-1)(1-z)), expanded to q-degree and
// z-order N.
inline BivariateSeries level_bivariate(unsigned k, unsigned order) {
  BivariateSeries a(order + 1, TruncatedSeries(order));
  if (order >= 1) {
    a[1] = scale(geom_divide(TruncatedSeries::variable(order)), Rational(k - 1));
  }
  BivariateSeries e = bivariate_exp(a);
  e[0] = subtract(e[0], TruncatedSeries::constant(order, 1));
  for (auto& s : e) s = scale(geom_divide(s), Rational(1, k - 1));
  return e;
}

inline bool bivariate_check(unsigned k, unsigned order) {
  const BivariateSeries d = level_bivariate(k, order);
  if (!d[0].is_zero()) return false;
  for (unsigned l = 1; l <= order; ++l) {
    if (d[l] != level_series(l, k, order)) return false;
  }
  return true;
}

// D(z,1): the q = 1 specialization.
inline TruncatedSeries specialize_q_one(const BivariateSeries& d) {
  TruncatedSeries s(d.at(0).order());
  for (const auto& part : d) s = add(s, part);
  return s;
}

}  // namespace chainlab
