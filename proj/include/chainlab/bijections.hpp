#pragma once

// Marked chains, valid traversals, and the l!-to-1 map between them; plus the
// permutation-side statistics that share the same level distribution.

#include "chainlab/chain.hpp"
#include "chainlab/decompress.hpp"
#include "chainlab/numeric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chainlab {

// A chain with l marked internal nodes v_0 < ... < v_{l-1} and, for each of
// v_1..v_{l-1}, the pointer slot w_i in 1..k-1 the traversal follows there.
struct MarkedChain {
  Chain chain;
  std::vector<Label> marks;
  std::vector<unsigned> slots;  // slots[i-1] = w_i

  unsigned level() const { return static_cast<unsigned>(marks.size()); }

  // Target p_i of the chosen pointer at v_i, i >= 1.
  Label pointer(unsigned i) const { return chain.target(marks[i], slots[i - 1]); }
  Label& pointer(unsigned i) { return chain.target(marks[i], slots[i - 1]); }

  friend bool operator==(const MarkedChain&, const MarkedChain&) = default;
  friend auto operator<=>(const MarkedChain&, const MarkedChain&) = default;
};

inline std::optional<std::string> validate(const MarkedChain& m) {
  if (auto v = validate(m.chain)) return v->message;
  if (m.marks.empty()) return std::string("at least one marked node is required");
  if (m.slots.size() + 1 != m.marks.size()) {
    return std::string("need exactly one pointer slot per mark after the first");
  }
  if (m.marks.front() < 1 || m.marks.back() > m.chain.n()) {
    return std::string("marks must be internal nodes 1..n");
  }
  for (std::size_t i = 1; i < m.marks.size(); ++i) {
    if (m.marks[i - 1] >= m.marks[i]) return std::string("marks must be strictly increasing");
  }
  for (unsigned w : m.slots) {
    if (w < 1 || w >= m.chain.k) return std::string("pointer slot out of range");
  }
  return std::nullopt;
}

inline void check(const MarkedChain& m) {
  if (auto e = validate(m)) throw std::invalid_argument(*e);
}

// v_0 <= p_1 < v_1 <= p_2 < ... <= p_{l-1} < v_{l-1}
inline bool is_valid_traversal(const MarkedChain& m) {
  check(m);
  for (unsigned i = 1; i < m.level(); ++i) {
    if (m.pointer(i) < m.marks[i - 1]) return false;
  }
  return true;
}

// Binary-chain form of the same test: t_{v_i} >= v_{i-1} for all i >= 1.
inline bool is_valid_traversal_by_inversion(const InversionTable& t,
                                            const std::vector<Label>& marks) {
  for (std::size_t i = 1; i < marks.size(); ++i) {
    if (t[marks[i] - 1] < marks[i - 1]) return false;
  }
  return true;
}

// Applies Phi_{l-1} first, then Phi_{l-2}, ..., Phi_1. Phi_i leaves a valid
// pointer alone; otherwise it redirects p_i to the (unshifted) v_{i-1} and
// slides marks v_m..v_{i-1} left until v_m sits just above the old target.
inline MarkedChain phi(MarkedChain m) {
  check(m);
  for (unsigned i = m.level() - 1; i >= 1; --i) {
    const Label p = m.pointer(i);
    if (p >= m.marks[i - 1]) continue;
    unsigned interval = 0;
    while (m.marks[interval] <= p) ++interval;  // v_{m-1} <= p < v_m
    const Label d = m.marks[interval] - p - 1;
    m.pointer(i) = m.marks[i - 1];
    for (unsigned j = interval; j < i; ++j) m.marks[j] -= d;
  }
  return m;
}

// All marked chains that phi sends to the valid traversal t; exactly l! of
// them. Inverts Phi_1, Phi_2, ... in that order, each with i+1 choices.
inline std::vector<MarkedChain> phi_preimages(const MarkedChain& t) {
  if (!is_valid_traversal(t)) throw std::invalid_argument("not a valid traversal");
  std::vector<MarkedChain> current{t};
  for (unsigned i = 1; i < t.level(); ++i) {
    std::vector<MarkedChain> next;
    next.reserve(current.size() * (i + 1));
    for (const auto& s : current) {
      next.push_back(s);
      const Label d = s.pointer(i) - s.marks[i - 1];
      for (unsigned interval = 0; interval < i; ++interval) {
        MarkedChain pre = s;
        pre.pointer(i) = s.marks[interval] - 1;
        for (unsigned j = interval; j < i; ++j) pre.marks[j] += d;
        next.push_back(std::move(pre));
      }
    }
    current = std::move(next);
  }
  return current;
}

// Visits every marked chain over k-ary chains of size n with `level` marks.
template <typename Visitor>
void for_each_marked_chain(unsigned k, unsigned n, unsigned level, Visitor&& visit) {
  if (level == 0 || level > n) return;
  std::vector<Label> marks(level);
  std::vector<unsigned> slots(level - 1, 1);
  for_each_chain(k, n, [&](const Chain& c) {
    MarkedChain m{c, {}, {}};
    std::iota(marks.begin(), marks.end(), Label{1});
    for (;;) {
      std::fill(slots.begin(), slots.end(), 1u);
      for (;;) {
        m.marks = marks;
        m.slots = slots;
        visit(static_cast<const MarkedChain&>(m));
        std::size_t s = slots.size();
        while (s > 0 && slots[s - 1] == k - 1) slots[--s] = 1;
        if (s == 0) break;
        ++slots[s - 1];
      }
      // next combination of marks in 1..n
      std::size_t i = level;
      while (i > 0 && marks[i - 1] == n - level + i) --i;
      if (i == 0) break;
      ++marks[i - 1];
      for (std::size_t j = i; j < level; ++j) marks[j] = marks[j - 1] + 1;
    }
  });
}

// ---------------------------------------------------------------------------
// Permutation statistics

inline BigInt count_increasing_subsequences(const Permutation& p, unsigned length) {
  if (length == 0) throw std::invalid_argument("subsequence length must be >= 1");
  const std::size_t n = p.size();
  // ending[i][l-1] = increasing subsequences of length l ending at position i
  std::vector<std::vector<BigInt>> ending(n, std::vector<BigInt>(length, 0));
  BigInt total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ending[i][0] = 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (p[j] >= p[i]) continue;
      for (unsigned l = 1; l < length; ++l) ending[i][l] += ending[j][l - 1];
    }
    total += ending[i][length - 1];
  }
  return total;
}

inline Permutation identity_permutation(unsigned n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1u);
  return p;
}

inline constexpr unsigned kPartialPermutationLimit = 6;

// Words of length n over {1..n, inf}, injective on the finite letters, with at
// least one inf. Brute force over all (n+1)^n words.
inline BigInt strict_partial_permutation_count(unsigned n,
                                               unsigned limit = kPartialPermutationLimit) {
  if (n > limit) {
    throw std::out_of_range("strict partial permutation brute force limited to n <= " +
                            std::to_string(limit));
  }
  if (n == 0) return 0;
  const unsigned inf = 0;  // letters 1..n are finite, 0 is inf
  std::vector<unsigned> word(n, 0);
  BigInt count = 0;
  for (;;) {
    std::vector<bool> seen(n + 1, false);
    bool injective = true;
    bool has_inf = false;
    for (unsigned x : word) {
      if (x == inf) {
        has_inf = true;
      } else if (seen[x]) {
        injective = false;
        break;
      } else {
        seen[x] = true;
      }
    }
    if (injective && has_inf) ++count;
    std::size_t i = n;
    while (i > 0 && word[i - 1] == n) word[--i] = 0;
    if (i == 0) break;
    ++word[i - 1];
  }
  return count;
}

struct JointProfileCounts {
  unsigned permutations = 0;  // exactly 5 increasing pairs, no increasing triple
  unsigned chains = 0;        // exactly 5 level-2 nodes, nothing above level 2
  unsigned permutations_scanned = 0;
  unsigned chains_scanned = 0;
};

// Shows that no bijection S_5 -> C_5 can carry the joint increasing-subsequence
// statistics onto the joint level profile.
inline JointProfileCounts joint_profile_counterexample() {
  constexpr unsigned n = 5;
  JointProfileCounts r;
  Permutation p = identity_permutation(n);
  do {
    ++r.permutations_scanned;
    if (count_increasing_subsequences(p, 2) == 5 && count_increasing_subsequences(p, 3) == 0) {
      ++r.permutations;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  for_each_chain(2, n, [&](const Chain& c) {
    ++r.chains_scanned;
    const LevelProfile prof = level_profile(c);
    auto two = prof.find(2);
    const bool five_on_two = two != prof.end() && two->second == 5;
    const bool nothing_above = prof.upper_bound(2) == prof.end();
    if (five_on_two && nothing_above) ++r.chains;
  });
  return r;
}


// ---------------------------------------------------------------------------
// Exhaustive fiber scan of phi

struct FiberScan {
  unsigned k = 2;
  unsigned n = 0;
  unsigned level = 1;
  BigInt marked_chains = 0;
  BigInt valid_traversals = 0;
  BigInt images = 0;                 // distinct phi images
  bool images_valid = true;          // phi(m) is always a valid traversal
  bool fibers_have_factorial_size = true;
  bool preimages_match = true;       // phi_preimages(t) == phi^{-1}(t) for every t

  bool ok() const {
    return images_valid && fibers_have_factorial_size && preimages_match &&
           images == valid_traversals;
  }
};

inline FiberScan scan_phi_fibers(unsigned k, unsigned n, unsigned level) {
  FiberScan r;
  r.k = k;
  r.n = n;
  r.level = level;
  std::map<MarkedChain, std::vector<MarkedChain>> fibers;
  for_each_marked_chain(k, n, level, [&](const MarkedChain& m) {
    ++r.marked_chains;
    if (is_valid_traversal(m)) ++r.valid_traversals;
    MarkedChain image = phi(m);
    if (!is_valid_traversal(image)) r.images_valid = false;
    fibers[std::move(image)].push_back(m);
  });
  r.images = fibers.size();
  const auto expected = static_cast<std::size_t>(factorial(level));
  for (auto& [image, fiber] : fibers) {
    if (fiber.size() != expected) r.fibers_have_factorial_size = false;
    auto pre = phi_preimages(image);
    std::sort(pre.begin(), pre.end());
    std::sort(fiber.begin(), fiber.end());
    if (pre != fiber) r.preimages_match = false;
  }
  return r;
}

}  // namespace chainlab
