#pragma once

// Monte Carlo comparison of sampled decompressed sizes with the exact mean.

#include "chainlab/chain.hpp"
#include "chainlab/decompress.hpp"
#include "chainlab/exact_stats.hpp"
#include "chainlab/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chainlab {

struct SampleReport {
  unsigned k = 2;
  unsigned n = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  // log2 of sampled sizes at the 0, 25, 50, 75, 100 percent order statistics.
  std::vector<Real> log2_quantiles;
  BigInt min_size = 0;
  BigInt median_size = 0;
  BigInt max_size = 0;
  Rational empirical_mean = 0;
  Rational exact_mean = 0;
  Real asymptotic_mean = 0;
  Real log2_exact_mean = 0;
};

inline constexpr double kReportQuantiles[] = {0.0, 0.25, 0.5, 0.75, 1.0};

// Sample i is drawn from its own generator seeded with derive_seed(seed, i),
// so the report does not depend on how samples are scheduled.
inline SampleReport sample_experiment(unsigned k, unsigned n, std::uint64_t count,
                                      std::uint64_t seed,
                                      unsigned precision_bits = kDefaultPrecisionBits) {
  require_arity(k);
  if (count == 0) throw std::invalid_argument("sample count must be >= 1");
  PrecisionGuard guard(precision_bits);
  SampleReport r;
  r.k = k;
  r.n = n;
  r.count = count;
  r.seed = seed;

  std::vector<BigInt> sizes;
  sizes.reserve(count);
  BigInt sum = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    sizes.push_back(decompressed_size(random_chain(k, n, derive_seed(seed, i))));
    sum += sizes.back();
  }
  std::sort(sizes.begin(), sizes.end());

  // Nearest-rank order statistic at floor(q * (count - 1)).
  auto at = [&](double q) -> const BigInt& {
    return sizes[static_cast<std::size_t>(q * static_cast<double>(count - 1))];
  };
  auto log2_of = [](const BigInt& v) -> Real {
    if (v == 0) return Real(0);  // only reachable for n = 0; reported as 0
    return boost::multiprecision::log2(Real(v));
  };
  for (double q : kReportQuantiles) r.log2_quantiles.push_back(log2_of(at(q)));
  r.min_size = sizes.front();
  r.median_size = at(0.5);
  r.max_size = sizes.back();
  r.empirical_mean = Rational(sum, BigInt(count));
  r.exact_mean = expected_size_exact(n, k);
  if (n >= 1) {
    r.asymptotic_mean = expected_size_asymptotic(n, k, precision_bits);
    r.log2_exact_mean = boost::multiprecision::log2(Real(r.exact_mean));
  }
  return r;
}

inline constexpr const char* kHeavyTailNote =
    "the size distribution has a heavy upper tail; the empirical mean of a modest "
    "sample typically sits well below the exact mean";

}  // namespace chainlab
