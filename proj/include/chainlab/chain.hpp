#pragma once

// k-ary chains: representation, validation, enumeration, uniform sampling,
// and the inversion-table / permutation views of binary chains.
//
// Node labels run 0..n. Node 0 is the sink, node n the root, and node i's
// first child (the spine edge) is always node i-1. Only the k-1 pointer
// targets of each internal node are stored.

#include "chainlab/numeric.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

using Label = std::uint32_t;

struct Chain {
  unsigned k = 2;
  // targets[i-1] holds the pointer targets of internal node i, slot order 2..k.
  std::vector<std::vector<Label>> targets;

  unsigned n() const { return static_cast<unsigned>(targets.size()); }

  // Pointer target of node i (1-based) in pointer slot w (1..k-1).
  Label target(unsigned node, unsigned slot) const {
    return targets[node - 1][slot - 1];
  }
  Label& target(unsigned node, unsigned slot) {
    return targets[node - 1][slot - 1];
  }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

// First violation found by validate(). `node` and `slot` are 1-based; slot 0
// means the row itself has the wrong arity.
struct ChainViolation {
  unsigned node = 0;
  unsigned slot = 0;
  std::int64_t target = 0;
  std::string message;
};

class InvalidChain : public std::invalid_argument {
 public:
  explicit InvalidChain(const ChainViolation& v)
      : std::invalid_argument(v.message), violation_(v) {}
  const ChainViolation& violation() const { return violation_; }

 private:
  ChainViolation violation_;
};

inline std::optional<ChainViolation> validate(const Chain& c) {
  if (c.k < 2) {
    return ChainViolation{0, 0, 0,
                          "arity k=" + std::to_string(c.k) + " must be >= 2"};
  }
  for (unsigned i = 1; i <= c.n(); ++i) {
    const auto& row = c.targets[i - 1];
    if (row.size() != c.k - 1) {
      return ChainViolation{i, 0, static_cast<std::int64_t>(row.size()),
                            "node " + std::to_string(i) + " has " +
                                std::to_string(row.size()) +
                                " pointers, expected " +
                                std::to_string(c.k - 1)};
    }
    for (unsigned j = 1; j < c.k; ++j) {
      if (row[j - 1] >= i) {
        std::ostringstream os;
        os << "node " << i << " slot " << j << " targets " << row[j - 1]
           << ", must be < " << i;
        return ChainViolation{i, j, row[j - 1], os.str()};
      }
    }
  }
  return std::nullopt;
}

inline void check(const Chain& c) {
  if (auto v = validate(c)) throw InvalidChain(*v);
}

inline void require_arity(unsigned k) {
  if (k < 2) throw std::invalid_argument("arity k must be >= 2");
}

inline BigInt chain_count(unsigned n, unsigned k) {
  require_arity(k);
  return ipow(factorial(n), k - 1);
}

// Visits every k-ary chain of size n exactly once, in lexicographic order of
// the flattened target table. The visitor receives a reference to a scratch
// chain that is mutated between calls; copy it to keep it.
template <typename Visitor>
void for_each_chain(unsigned k, unsigned n, Visitor&& visit) {
  require_arity(k);
  Chain c;
  c.k = k;
  c.targets.assign(n, std::vector<Label>(k - 1, 0));
  // Odometer over the flattened table; the last position varies fastest.
  const std::size_t slots = static_cast<std::size_t>(n) * (k - 1);
  for (;;) {
    visit(static_cast<const Chain&>(c));
    std::size_t pos = slots;
    for (;;) {
      if (pos == 0) return;
      --pos;
      const unsigned node = static_cast<unsigned>(pos / (k - 1)) + 1;
      auto& t = c.targets[node - 1][pos % (k - 1)];
      if (t + 1 < node) {
        ++t;
        break;
      }
      t = 0;
    }
  }
}

inline std::vector<Chain> enumerate_chains(unsigned k, unsigned n) {
  std::vector<Chain> out;
  for_each_chain(k, n, [&](const Chain& c) { out.push_back(c); });
  return out;
}

// Helpers for the two extreme chains.
inline Chain all_sink_chain(unsigned k, unsigned n) {
  Chain c;
  c.k = k;
  c.targets.assign(n, std::vector<Label>(k - 1, 0));
  return c;
}

inline Chain all_previous_chain(unsigned k, unsigned n) {
  Chain c;
  c.k = k;
  for (unsigned i = 1; i <= n; ++i) c.targets.emplace_back(k - 1, i - 1);
  return c;
}

// ---------------------------------------------------------------------------
// Random sampling

// SplitMix64 finalizer; used to derive per-worker seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t worker) {
  return mix_seed(base ^ mix_seed(worker));
}

// Unbiased draw from {0, ..., bound-1} by rejection. std::uniform_int_distribution
// is not specified bit-for-bit, so sampled chains would differ across standard
// libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

inline Chain random_chain(unsigned k, unsigned n, std::mt19937_64& rng) {
  require_arity(k);
  Chain c;
  c.k = k;
  c.targets.resize(n);
  for (unsigned i = 1; i <= n; ++i) {
    auto& row = c.targets[i - 1];
    row.resize(k - 1);
    for (auto& t : row) t = static_cast<Label>(uniform_below(rng, i));
  }
  return c;
}

inline Chain random_chain(unsigned k, unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_chain(k, n, rng);
}

// ---------------------------------------------------------------------------
// Binary chains as inversion tables and permutations

using InversionTable = std::vector<Label>;
using Permutation = std::vector<unsigned>;  // values 1..n

inline void require_binary(const Chain& c) {
  if (c.k != 2) {
    throw std::invalid_argument("operation requires a binary chain (k=2), got k=" +
                                std::to_string(c.k));
  }
}

inline InversionTable chain_to_inversion(const Chain& c) {
  require_binary(c);
  InversionTable t;
  t.reserve(c.n());
  for (const auto& row : c.targets) t.push_back(row[0]);
  return t;
}

inline Chain inversion_to_chain(const InversionTable& t) {
  Chain c;
  c.k = 2;
  for (Label v : t) c.targets.push_back({v});
  check(c);
  return c;
}

// Left insertion: value i is placed so that exactly t_i earlier values precede it.
inline Permutation chain_to_permutation(const Chain& c) {
  require_binary(c);
  Permutation p;
  p.reserve(c.n());
  for (unsigned i = 1; i <= c.n(); ++i) {
    p.insert(p.begin() + c.target(i, 1), i);
  }
  return p;
}

inline std::string to_string(const Chain& c) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < c.targets[i].size(); ++j) {
      if (j) os << ",";
      os << c.targets[i][j];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace chainlab
