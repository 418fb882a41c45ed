#include "chainlab/addition_chains.hpp"
#include "chainlab/exact_stats.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace chainlab {
namespace {

Chain binary(std::vector<Label> t) {
  Chain c;
  c.k = 2;
  for (Label v : t) c.targets.push_back({v});
  return c;
}

TEST(Brauer, FromChain) {
  EXPECT_EQ(brauer_from_chain(binary({0, 1})), (BrauerChain{1, 2, 4}));
  EXPECT_EQ(brauer_from_chain(binary({0, 0})), (BrauerChain{1, 2, 3}));
  EXPECT_EQ(brauer_from_chain(all_previous_chain(2, 4)), (BrauerChain{1, 2, 4, 8, 16}));
  EXPECT_EQ(brauer_from_chain(binary({})), (BrauerChain{1}));
  EXPECT_THROW(brauer_from_chain(Chain{3, {{0, 0}}}), std::invalid_argument);
  EXPECT_EQ(k_brauer_from_chain(Chain{3, {{0, 0}, {1, 1}}}), (BrauerChain{1, 3, 9}));
}

TEST(Brauer, ToChain) {
  EXPECT_EQ(chain_from_brauer({1, 2, 3, 5}), binary({0, 0, 1}));
  EXPECT_THROW(chain_from_brauer({1, 3}), NotBrauerChain);
  EXPECT_THROW(chain_from_brauer({2, 4}), NotBrauerChain);
  EXPECT_THROW(chain_from_brauer({}), NotBrauerChain);
  // 8 = 4 + 4 is an addition step but does not use the preceding 5.
  EXPECT_THROW(chain_from_brauer({1, 2, 4, 5, 8}), NotBrauerChain);
}

TEST(Brauer, RoundTripAllChains) {
  for (unsigned n = 0; n <= 7; ++n) {
    for_each_chain(2, n, [&](const Chain& c) {
      const BrauerChain b = brauer_from_chain(c);
      EXPECT_EQ(chain_from_brauer(b), c);
      for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
    });
  }
}

TEST(Brauer, ExtremesAndMean) {
  for (unsigned n = 1; n <= 7; ++n) {
    BigInt lo = -1, hi = 0, sum = 0;
    for_each_chain(2, n, [&](const Chain& c) {
      const BigInt a = brauer_from_chain(c).back();
      if (lo < 0 || a < lo) lo = a;
      if (a > hi) hi = a;
      sum += a;
    });
    EXPECT_EQ(lo, n + 1);
    EXPECT_EQ(hi, ipow(BigInt(2), n));
    EXPECT_EQ(Rational(sum, factorial(n)), expected_size_exact(n, 2) + 1);
  }
}

TEST(MinimalLength, SmallValues) {
  EXPECT_EQ(min_addition_chain_length(1), 0u);
  EXPECT_EQ(min_addition_chain_length(2), 1u);
  EXPECT_EQ(min_addition_chain_length(15), 5u);
  EXPECT_EQ(min_addition_chain_length(31), 7u);
  EXPECT_EQ(min_star_chain_length(16), 4u);
  EXPECT_EQ(min_star_chain_length(1), 0u);
  EXPECT_THROW(min_addition_chain_length(0), std::invalid_argument);
  EXPECT_THROW(min_addition_chain_length(2000), std::out_of_range);
  EXPECT_EQ(min_addition_chain_length(127), 10u);
  EXPECT_EQ(min_addition_chain_length(1024), 10u);
}

TEST(MinimalLength, MatchesExhaustiveOracle) {
  const auto plain = oracle::exhaustive_chain_lengths(7, 40, false);
  const auto star = oracle::exhaustive_chain_lengths(7, 40, true);
  for (std::uint64_t m = 1; m <= 40; ++m) {
    auto it = plain.find(m);
    if (it != plain.end()) {
      EXPECT_EQ(min_addition_chain_length(m), it->second) << m;
    }
    auto st = star.find(m);
    if (st != star.end()) {
      EXPECT_EQ(min_star_chain_length(m), st->second) << m;
    }
  }
  // Every m <= 32 is reachable within 7 steps.
  for (std::uint64_t m = 1; m <= 32; ++m) EXPECT_TRUE(plain.count(m)) << m;
}

TEST(MinimalLength, StarBoundsUpTo256) {
  for (std::uint64_t m = 1; m <= 256; ++m) {
    const unsigned l = min_addition_chain_length(m);
    const unsigned ls = min_star_chain_length(m);
    unsigned log2 = 0;
    while ((std::uint64_t{1} << log2) < m) ++log2;
    EXPECT_LE(l, ls) << m;
    EXPECT_GE(ls, log2) << m;
    // Binary method upper bound.
    unsigned bits = 0, ones = 0;
    for (std::uint64_t x = m; x > 0; x >>= 1) {
      ++bits;
      ones += x & 1;
    }
    EXPECT_LE(ls, bits - 1 + ones - 1) << m;
  }
}

TEST(MinimalLength, StarChainIsAChainOfThatLength) {
  // A minimal star chain for m is a binary chain of size l*(m) with a_n = m.
  for (std::uint64_t m = 1; m <= 24; ++m) {
    const unsigned ls = min_star_chain_length(m);
    bool found = false;
    bool shorter = false;
    for (unsigned n = 0; n <= ls; ++n) {
      for_each_chain(2, n, [&](const Chain& c) {
        if (leaf_counts(c).back() == m) (n < ls ? shorter : found) = true;
      });
    }
    EXPECT_TRUE(found) << m;
    EXPECT_FALSE(shorter) << m;
  }
}

TEST(ScholzBrauer, HoldsUpToEight) {
  for (unsigned m = 1; m <= kScholzBrauerLimit; ++m) EXPECT_TRUE(scholz_brauer_check(m)) << m;
  EXPECT_THROW(scholz_brauer_check(9), std::out_of_range);
  EXPECT_THROW(scholz_brauer_check(0), std::invalid_argument);
}

TEST(Compressible, KnownTerms) {
  const std::vector<BigInt> expected{1, 1, 1, 2, 3, 6, 10, 20, 36, 70, 130};
  EXPECT_EQ(count_chain_compressible(11), expected);
  EXPECT_TRUE(count_chain_compressible(0).empty());
  EXPECT_THROW(count_chain_compressible(13), std::out_of_range);
}

TEST(Compressible, MatchesTreeEnumeration) {
  const auto counts = count_chain_compressible(10);
  for (unsigned m = 1; m <= 10; ++m) {
    BigInt compressible = 0;
    for (const auto& shape : oracle::all_trees(2, m - 1)) {
      if (is_chain(compress_tree(KTree{2, shape}))) ++compressible;
    }
    EXPECT_EQ(counts[m - 1], compressible) << m;
  }
}

}  // namespace
}  // namespace chainlab
