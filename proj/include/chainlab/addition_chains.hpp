#pragma once

// Binary chains as Brauer (star) addition chains, minimal chain lengths, and
// the count of trees that compress into chains.

#include "chainlab/chain.hpp"
#include "chainlab/decompress.hpp"
#include "chainlab/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

using BrauerChain = std::vector<BigInt>;

// Leaf counts a_0..a_n; for k = 2 this is a Brauer chain ending in a_n = m.
inline BrauerChain k_brauer_from_chain(const Chain& c) { return leaf_counts(c); }

inline BrauerChain brauer_from_chain(const Chain& c) {
  require_binary(c);
  return leaf_counts(c);
}

class NotBrauerChain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Chain chain_from_brauer(const BrauerChain& b) {
  if (b.empty() || b[0] != 1) throw NotBrauerChain("not a Brauer chain: a_0 must be 1");
  Chain c;
  c.k = 2;
  for (std::size_t i = 1; i < b.size(); ++i) {
    const BigInt step = b[i] - b[i - 1];
    // Values strictly increase, so at most one earlier index carries `step`.
    auto it = std::find(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i), step);
    if (step <= 0 || it == b.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw NotBrauerChain("not a Brauer chain: a_" + std::to_string(i) + " - a_" +
                           std::to_string(i - 1) + " = " + step.str() +
                           " is not an earlier element");
    }
    c.targets.push_back({static_cast<Label>(it - b.begin())});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Minimal chain lengths

inline constexpr std::uint64_t kAdditionChainLimit = 1u << 10;

namespace detail {

class ChainSearch {
 public:
  ChainSearch(std::uint64_t target, bool star) : target_(target), star_(star) {}

  unsigned shortest() {
    if (target_ == 1) return 0;
    unsigned bound = 0;
    while ((std::uint64_t{1} << bound) < target_) ++bound;  // ceil(log2 m)
    for (;; ++bound) {
      chain_.assign(1, 1);
      if (extend(bound)) return bound;
    }
  }

 private:
  bool extend(unsigned bound) {
    const std::uint64_t last = chain_.back();
    if (last == target_) return true;
    const unsigned steps = bound - static_cast<unsigned>(chain_.size() - 1);
    if (steps == 0) return false;
    // Doubling is the fastest possible growth.
    if ((last << steps) < target_) return false;

    std::vector<std::uint64_t> candidates;
    const std::size_t top = chain_.size();
    for (std::size_t i = star_ ? top - 1 : 0; i < top; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const std::uint64_t s = chain_[i] + chain_[j];
        if (s > last && s <= target_) candidates.push_back(s);
      }
    }
    // Largest first; a repeated value leads to an identical subtree.
    std::sort(candidates.rbegin(), candidates.rend());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::uint64_t s : candidates) {
      if ((s << (steps - 1)) < target_) break;
      chain_.push_back(s);
      if (extend(bound)) return true;
      chain_.pop_back();
    }
    return false;
  }

  std::uint64_t target_;
  bool star_;
  std::vector<std::uint64_t> chain_;
};

inline void require_search_range(std::uint64_t m, std::uint64_t limit) {
  if (m < 1) throw std::invalid_argument("addition chain target must be >= 1");
  if (m > limit) {
    throw std::out_of_range("addition chain target " + std::to_string(m) +
                            " exceeds limit " + std::to_string(limit));
  }
}

}  // namespace detail

// l(m): steps a_i = a_j1 + a_j2 with j1, j2 < i.
inline unsigned min_addition_chain_length(std::uint64_t m,
                                          std::uint64_t limit = kAdditionChainLimit) {
  detail::require_search_range(m, limit);
  return detail::ChainSearch(m, false).shortest();
}

// l*(m): every step uses the immediately preceding element.
inline unsigned min_star_chain_length(std::uint64_t m,
                                      std::uint64_t limit = kAdditionChainLimit) {
  detail::require_search_range(m, limit);
  return detail::ChainSearch(m, true).shortest();
}

inline constexpr unsigned kScholzBrauerLimit = 8;

// l*(2^m - 1) <= m - 1 + l*(m)
inline bool scholz_brauer_check(unsigned m, unsigned limit = kScholzBrauerLimit) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (m > limit) {
    throw std::out_of_range("Scholz-Brauer check limited to m <= " + std::to_string(limit));
  }
  const std::uint64_t mersenne = (std::uint64_t{1} << m) - 1;
  return min_star_chain_length(mersenne, mersenne) <= m - 1 + min_star_chain_length(m);
}

// ---------------------------------------------------------------------------
// Chain-compressible binary trees

inline constexpr unsigned kCompressibleLimit = 12;

// counts[m-1] = number of binary chains (any size) whose decompressed tree has
// m leaves, i.e. number of binary trees with m leaves that compress to a chain.
inline std::vector<BigInt> count_chain_compressible(unsigned max_m,
                                                    unsigned limit = kCompressibleLimit) {
  if (max_m > limit) {
    throw std::out_of_range("chain-compressible count limited to m <= " +
                            std::to_string(limit));
  }
  std::vector<BigInt> counts(max_m, 0);
  if (max_m == 0) return counts;
  std::vector<std::uint64_t> a{1};
  // Each extension adds at least a_0 = 1, and distinct targets give distinct
  // values, so every chain is reached exactly once.
  auto dfs = [&](auto&& self) -> void {
    ++counts[a.back() - 1];
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t next = a.back() + a[j];
      if (next > max_m) break;  // a is increasing
      a.push_back(next);
      self(self);
      a.pop_back();
    }
  };
  dfs(dfs);
  return counts;
}

}  // namespace chainlab
