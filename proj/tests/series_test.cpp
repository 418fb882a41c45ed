#include "chainlab/exact_stats.hpp"
#include "chainlab/series.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace chainlab {
namespace {

TruncatedSeries ones(unsigned order) {
  return TruncatedSeries(order, std::vector<Rational>(order + 1, 1));
}

TEST(SeriesConversion, ChainCountsGiveGeometricSeries) {
  for (unsigned k = 2; k <= 4; ++k) {
    std::vector<BigInt> f;
    for (unsigned n = 0; n <= 12; ++n) f.push_back(chain_count(n, k));
    EXPECT_EQ(counts_to_series(f, k - 1), ones(12));
    EXPECT_EQ(series_to_counts(ones(12), k - 1), f);
  }
}

TEST(SeriesConversion, DZeroIsIdentityAndRoundTrip) {
  std::vector<BigInt> f{3, 1, 4, 1, 5, 9, 2, 6};
  const TruncatedSeries s = counts_to_series(f, 0);
  for (unsigned n = 0; n < f.size(); ++n) EXPECT_EQ(s[n], Rational(f[n]));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BigInt> g;
    for (int n = 0; n < 15; ++n) g.push_back(BigInt(rng() % 100000));
    for (unsigned d = 0; d <= 3; ++d) EXPECT_EQ(series_to_counts(counts_to_series(g, d), d), g);
  }
}

TEST(SeriesConversion, NonIntegerIsReported) {
  TruncatedSeries s(3);
  s[2] = Rational(1, 3);
  try {
    series_to_counts(s, 1);
    FAIL() << "expected NonIntegerCount";
  } catch (const NonIntegerCount& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(SeriesOps, Elementary) {
  EXPECT_EQ(geom_divide(TruncatedSeries::constant(8, 1)), ones(8));

  const TruncatedSeries e = exp(TruncatedSeries::variable(10));
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(e[n], Rational(1, factorial(n)));

  TruncatedSeries one_minus_z = TruncatedSeries::constant(10, 1);
  one_minus_z[1] = -1;
  EXPECT_EQ(multiply(ones(10), one_minus_z), TruncatedSeries::constant(10, 1));

  EXPECT_THROW(exp(TruncatedSeries::constant(4, 1)), std::invalid_argument);
  EXPECT_THROW(add(ones(3), ones(4)), std::invalid_argument);

  // Integration then differentiation is the identity below the top order.
  const TruncatedSeries back = differentiate(integrate(ones(6)));
  for (unsigned n = 0; n < 6; ++n) EXPECT_EQ(back[n], Rational(1));
  EXPECT_EQ(integrate(ones(6))[0], Rational(0));
  EXPECT_EQ(subtract(ones(5), ones(5)), TruncatedSeries(5));
  EXPECT_EQ(scale(ones(3), Rational(2, 3))[3], Rational(2, 3));
}

TEST(SeriesOps, ExpOfLogGeometric) {
  // exp(-log(1-z)) = 1/(1-z), with -log(1-z) = sum z^n / n.
  TruncatedSeries log_term(12);
  for (unsigned n = 1; n <= 12; ++n) log_term[n] = Rational(1, n);
  EXPECT_EQ(exp(log_term), ones(12));
}

TEST(AddRoot, Examples) {
  const TruncatedSeries c = chain_series(15);
  EXPECT_EQ(add_root(c), subtract(c, TruncatedSeries::constant(15, 1)));
  EXPECT_EQ(add_root(TruncatedSeries::constant(5, 1)), TruncatedSeries::variable(5));
  EXPECT_EQ(add_root_counts({1}, 3), (std::vector<BigInt>{0, 1}));
}

TEST(AddRoot, FixedPointIsAllOnes) {
  for (unsigned order : {0u, 1u, 7u, 25u}) {
    TruncatedSeries f(order);
    for (unsigned it = 0; it <= order + 1; ++it) {
      f = add(TruncatedSeries::constant(order, 1), add_root(f));
    }
    EXPECT_EQ(f, ones(order));
  }
}

TEST(AddRoot, CountViewMatchesSeriesView) {
  for (unsigned k = 2; k <= 4; ++k) {
    std::vector<BigInt> f{1};
    for (unsigned n = 1; n <= 9; ++n) {
      auto grown = add_root_counts(f, k);
      grown[0] = 1;
      f = grown;
    }
    for (unsigned n = 0; n < f.size(); ++n) EXPECT_EQ(f[n], chain_count(n, k));
    const TruncatedSeries r = counts_to_series({2, 5, 7}, k - 1);
    const auto via_counts = add_root_counts({2, 5, 7}, k);
    const TruncatedSeries s = add_root(TruncatedSeries(3, r.coefficients()));
    EXPECT_EQ(series_to_counts(s, k - 1), via_counts);
  }
}

TEST(PointerOps, Examples) {
  EXPECT_EQ(pointer_add(TruncatedSeries::variable(6)), TruncatedSeries::variable(6));
  const TruncatedSeries plus = pointer_add(ones(9));
  EXPECT_EQ(plus[0], Rational(1));
  for (unsigned n = 1; n <= 9; ++n) EXPECT_EQ(plus[n], Rational(n));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries r(10);
    for (unsigned n = 1; n <= 10; ++n) r[n] = Rational(static_cast<int>(rng() % 200) - 100, 1 + rng() % 9);
    EXPECT_EQ(pointer_remove(pointer_add(r)), r);
  }
}

TEST(LevelSeries, Examples) {
  const TruncatedSeries d1 = level_series(1, 2, 10);
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(d1[n], Rational(n));
  EXPECT_EQ(level_series(2, 2, 10)[3], Rational(3, 2));
  EXPECT_EQ(series_to_counts(level_series(2, 2, 10), 1)[3], 9);
  EXPECT_TRUE(level_series(11, 3, 10).is_zero());
}

TEST(LevelSeries, RecurrenceMatchesClosedForm) {
  for (unsigned k = 2; k <= 4; ++k) {
    for (unsigned l = 1; l <= 6; ++l) {
      const TruncatedSeries s = level_series(l, k, 30);
      for (unsigned n = 0; n <= 30; ++n) {
        EXPECT_EQ(s[n], level_coefficient(l, n, k)) << k << "," << l << "," << n;
      }
    }
  }
}

TEST(LevelSeries, CountsMatchTotalsAndBruteForce) {
  for (unsigned k = 2; k <= 3; ++k) {
    for (unsigned l = 1; l <= 5; ++l) {
      const auto counts = series_to_counts(level_series(l, k, 20), k - 1);
      for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(counts[n], level_count_total(l, n, k));
    }
    // The path-walk oracle never touches the closed form.
    const unsigned max_n = k == 2 ? 6 : 4;
    for (unsigned n = 1; n <= max_n; ++n) {
      std::map<unsigned, BigInt> brute;
      for_each_chain(k, n, [&](const Chain& c) {
        for (const auto& [lv, count] : oracle::path_walk_levels(c)) brute[lv] += count;
      });
      for (const auto& [lv, count] : brute) {
        EXPECT_EQ(series_to_counts(level_series(lv, k, max_n), k - 1)[n], count);
      }
    }
  }
}

TEST(Bivariate, ClosedFormAgreesWithRecurrence) {
  EXPECT_TRUE(bivariate_check(2, 20));
  EXPECT_TRUE(bivariate_check(3, 15));
  EXPECT_TRUE(bivariate_check(4, 12));
}

TEST(Bivariate, QOneSpecialization) {
  for (unsigned k = 2; k <= 3; ++k) {
    const unsigned N = 15;
    TruncatedSeries sum(N);
    for (unsigned l = 1; l <= N; ++l) sum = add(sum, level_series(l, k, N));
    EXPECT_EQ(specialize_q_one(level_bivariate(k, N)), sum);
  }
}

TEST(Bivariate, ExpRejectsConstantTerm) {
  BivariateSeries a(3, TruncatedSeries(4));
  a[0] = TruncatedSeries::constant(4, 1);
  EXPECT_THROW(bivariate_exp(a), std::invalid_argument);
}

}  // namespace
}  // namespace chainlab
