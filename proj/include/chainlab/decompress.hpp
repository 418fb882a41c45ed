#pragma once

// Rooted ordered k-ary DAGs, their spine, the decompression operator, and the
// hash-consing compressor that inverts it.

#include "chainlab/chain.hpp"
#include "chainlab/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

// Canonical rooted DAG: node 0 is the sink, every node i >= 1 has exactly k
// children with labels < i, and the root is the last node.
struct RootedDag {
  unsigned k = 2;
  std::vector<std::vector<Label>> nodes;  // nodes[0] is empty

  Label root() const { return static_cast<Label>(nodes.size() - 1); }
  unsigned internal_count() const {
    return static_cast<unsigned>(nodes.size() - 1);
  }

  friend bool operator==(const RootedDag&, const RootedDag&) = default;
};

inline std::optional<std::string> validate(const RootedDag& g) {
  if (g.k < 2) return "arity k must be >= 2";
  if (g.nodes.empty()) return "DAG has no nodes";
  if (!g.nodes[0].empty()) return "node 0 must be the sink (no children)";
  std::vector<unsigned> indegree(g.nodes.size(), 0);
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    if (g.nodes[i].size() != g.k) {
      return "node " + std::to_string(i) + " has " +
             std::to_string(g.nodes[i].size()) + " children, expected " +
             std::to_string(g.k);
    }
    for (std::size_t j = 0; j < g.k; ++j) {
      if (g.nodes[i][j] >= i) {
        return "node " + std::to_string(i) + " child " + std::to_string(j + 1) +
               " is " + std::to_string(g.nodes[i][j]) + ", must be < " +
               std::to_string(i);
      }
      ++indegree[g.nodes[i][j]];
    }
  }
  for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) {
    if (indegree[i] == 0) {
      return "node " + std::to_string(i) + " is a second source";
    }
  }
  return std::nullopt;
}

inline void check(const RootedDag& g) {
  if (auto e = validate(g)) throw std::invalid_argument(*e);
}

inline RootedDag chain_to_dag(const Chain& c) {
  check(c);
  RootedDag g;
  g.k = c.k;
  g.nodes.emplace_back();
  for (unsigned i = 1; i <= c.n(); ++i) {
    std::vector<Label> ch;
    ch.reserve(c.k);
    ch.push_back(i - 1);
    ch.insert(ch.end(), c.targets[i - 1].begin(), c.targets[i - 1].end());
    g.nodes.push_back(std::move(ch));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Spine

struct Spine {
  // spine_edge[v][j] is true when child slot j+1 of node v is an internal edge.
  std::vector<std::vector<bool>> spine_edge;
  // Nodes in depth-first postorder along internal edges.
  std::vector<Label> postorder;

  bool is_pointer(Label v, unsigned slot_index) const {
    return !spine_edge[v][slot_index];
  }
};

// Depth-first search from the root visiting children in slot order; the first
// edge to reach a node is internal, every other edge is a pointer.
inline Spine spine(const RootedDag& g) {
  check(g);
  Spine s;
  s.spine_edge.resize(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    s.spine_edge[v].assign(g.nodes[v].size(), false);
  }
  std::vector<bool> visited(g.nodes.size(), false);
  struct Frame {
    Label node;
    unsigned next_slot;
  };
  std::vector<Frame> stack{{g.root(), 0}};
  visited[g.root()] = true;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_slot == g.nodes[f.node].size()) {
      s.postorder.push_back(f.node);
      stack.pop_back();
      continue;
    }
    const unsigned slot = f.next_slot++;
    const Label child = g.nodes[f.node][slot];
    if (!visited[child]) {
      visited[child] = true;
      s.spine_edge[f.node][slot] = true;
      stack.push_back({child, 0});
    }
  }
  return s;
}

inline bool is_chain(const Spine& s) {
  for (const auto& edges : s.spine_edge) {
    if (std::count(edges.begin(), edges.end(), true) > 1) return false;
  }
  return true;
}

inline bool is_chain(const RootedDag& g) { return is_chain(spine(g)); }

inline Chain dag_to_chain(const RootedDag& g) {
  if (!is_chain(g)) throw std::invalid_argument("DAG spine is not a path");
  Chain c;
  c.k = g.k;
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    c.targets.emplace_back(g.nodes[i].begin() + 1, g.nodes[i].end());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Sizes and level profiles

// a_i = number of leaves of the decompressed fringe subtree at node i.
inline std::vector<BigInt> leaf_counts(const Chain& c) {
  check(c);
  std::vector<BigInt> a(c.n() + 1);
  a[0] = 1;
  for (unsigned i = 1; i <= c.n(); ++i) {
    a[i] = a[i - 1];
    for (Label t : c.targets[i - 1]) a[i] += a[t];
  }
  return a;
}

inline BigInt decompressed_size(const Chain& c) {
  const auto a = leaf_counts(c);
  BigInt r = a.back() - 1;
  return r / (c.k - 1);
}

// Level (compression depth + 1) -> number of decompressed internal nodes.
using LevelProfile = std::map<unsigned, BigInt>;

inline BigInt total(const LevelProfile& p) {
  BigInt s = 0;
  for (const auto& [level, count] : p) s += count;
  return s;
}

inline void accumulate(LevelProfile& into, const LevelProfile& p) {
  for (const auto& [level, count] : p) into[level] += count;
}

// Path counts by pointer depth: paths[v][d] = root-to-v paths crossing exactly
// d pointers.
struct PathCounts {
  std::vector<std::vector<BigInt>> paths;

  LevelProfile profile() const {
    LevelProfile p;
    for (std::size_t v = 1; v < paths.size(); ++v) {
      for (std::size_t d = 0; d < paths[v].size(); ++d) {
        if (paths[v][d] != 0) p[static_cast<unsigned>(d + 1)] += paths[v][d];
      }
    }
    return p;
  }

  BigInt sink_paths() const {
    BigInt s = 0;
    for (const auto& w : paths[0]) s += w;
    return s;
  }
};

namespace detail {

// Children carry smaller labels, so sweeping labels downward from the root
// finishes every node's incoming paths before propagating them.
template <typename IsPointer>
PathCounts count_paths(const RootedDag& g, IsPointer&& is_pointer) {
  const std::size_t m = g.nodes.size();
  PathCounts pc;
  pc.paths.assign(m, {});
  pc.paths[m - 1] = {BigInt(1)};
  for (std::size_t v = m - 1; v >= 1; --v) {
    const auto& here = pc.paths[v];
    for (unsigned j = 0; j < g.k; ++j) {
      const Label c = g.nodes[v][j];
      const std::size_t shift = is_pointer(static_cast<Label>(v), j) ? 1 : 0;
      auto& there = pc.paths[c];
      if (there.size() < here.size() + shift) there.resize(here.size() + shift);
      for (std::size_t d = 0; d < here.size(); ++d) there[d + shift] += here[d];
    }
  }
  return pc;
}

}  // namespace detail

inline PathCounts chain_path_counts(const Chain& c) {
  const RootedDag g = chain_to_dag(c);
  return detail::count_paths(g, [](Label, unsigned slot) { return slot != 0; });
}

inline LevelProfile level_profile(const Chain& c) {
  return chain_path_counts(c).profile();
}

inline PathCounts dag_path_counts(const RootedDag& g) {
  const Spine s = spine(g);
  return detail::count_paths(
      g, [&](Label v, unsigned slot) { return s.is_pointer(v, slot); });
}

inline LevelProfile dag_level_profile(const RootedDag& g) {
  return dag_path_counts(g).profile();
}

// Number of root-to-internal-node paths, without tracking depth.
inline BigInt dag_decompressed_size(const RootedDag& g) {
  check(g);
  const std::size_t m = g.nodes.size();
  std::vector<BigInt> paths(m);
  paths[m - 1] = 1;
  BigInt size = 0;
  for (std::size_t v = m - 1; v >= 1; --v) {
    size += paths[v];
    for (Label c : g.nodes[v]) paths[c] += paths[v];
  }
  return size;
}

// ---------------------------------------------------------------------------
// Explicit trees

// Ordered k-ary tree stored as its preorder shape: 1 for an internal node
// (followed by its k subtrees), 0 for a leaf.
struct KTree {
  unsigned k = 2;
  std::vector<std::uint8_t> preorder{0};

  static KTree leaf(unsigned k) { return KTree{k, {0}}; }

  static KTree node(const std::vector<KTree>& children) {
    if (children.empty()) throw std::invalid_argument("internal node needs children");
    KTree t{static_cast<unsigned>(children.size()), {1}};
    for (const auto& c : children) {
      if (c.k != t.k) throw std::invalid_argument("mixed arities in tree");
      t.preorder.insert(t.preorder.end(), c.preorder.begin(), c.preorder.end());
    }
    return t;
  }

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count(preorder.begin(), preorder.end(), std::uint8_t{1}));
  }
  std::size_t leaves() const { return preorder.size() - size(); }

  friend bool operator==(const KTree&, const KTree&) = default;
};

inline bool is_valid_tree(const KTree& t) {
  if (t.k < 2) return false;
  std::size_t open = 1;  // subtrees still expected
  for (std::size_t i = 0; i < t.preorder.size(); ++i) {
    if (open == 0) return false;
    --open;
    if (t.preorder[i] == 1) open += t.k;
    else if (t.preorder[i] != 0) return false;
  }
  return open == 0;
}

// Decompressed tree together with the compression level of each internal
// node, listed in preorder.
struct DecompressedTree {
  KTree tree;
  std::vector<unsigned> levels;

  LevelProfile profile() const {
    LevelProfile p;
    for (unsigned l : levels) p[l] += 1;
    return p;
  }
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t budget, std::size_t reached)
      : std::runtime_error("decompression budget of " + std::to_string(budget) +
                           " internal nodes exceeded (reached " +
                           std::to_string(reached) + ")"),
        budget_(budget),
        reached_(reached) {}
  std::size_t budget() const { return budget_; }
  std::size_t reached() const { return reached_; }

 private:
  std::size_t budget_;
  std::size_t reached_;
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

// Sinks become leaves; nodes are finished in spine postorder, and each pointer
// is replaced by a deep copy of the finished fringe subtree of its target.
inline DecompressedTree decompress_tree(const RootedDag& g,
                                        std::size_t budget = kDefaultNodeBudget) {
  const Spine s = spine(g);
  struct Fringe {
    std::vector<std::uint8_t> shape;
    std::vector<std::uint32_t> depth;  // relative pointer depth per internal node
    bool done = false;
  };
  std::vector<Fringe> fringe(g.nodes.size());
  fringe[0].shape = {0};
  fringe[0].done = true;

  for (Label v : s.postorder) {
    if (v == 0) continue;
    Fringe f;
    std::size_t size = 1;
    for (unsigned j = 0; j < g.k; ++j) {
      const Fringe& child = fringe[g.nodes[v][j]];
      if (!child.done) throw std::logic_error("postorder visited a pointer target late");
      size += child.depth.size();
    }
    if (size > budget) throw BudgetExceeded(budget, size);
    f.shape.push_back(1);
    f.depth.push_back(0);
    for (unsigned j = 0; j < g.k; ++j) {
      const Fringe& child = fringe[g.nodes[v][j]];
      const std::uint32_t shift = s.is_pointer(v, j) ? 1 : 0;
      f.shape.insert(f.shape.end(), child.shape.begin(), child.shape.end());
      for (auto d : child.depth) f.depth.push_back(d + shift);
    }
    f.done = true;
    fringe[v] = std::move(f);
  }

  DecompressedTree out;
  Fringe& root = fringe[g.root()];
  out.tree = KTree{g.k, std::move(root.shape)};
  out.levels.reserve(root.depth.size());
  for (auto d : root.depth) out.levels.push_back(d + 1);
  return out;
}

inline DecompressedTree decompress_tree(const Chain& c,
                                        std::size_t budget = kDefaultNodeBudget) {
  return decompress_tree(chain_to_dag(c), budget);
}

// Hash-consing: identical subtrees share one node, keyed on the tuple of child
// labels. Labels are assigned in postorder of first occurrence, so children
// always precede parents.
inline RootedDag compress_tree(const KTree& t) {
  if (!is_valid_tree(t)) throw std::invalid_argument("malformed k-ary tree");
  RootedDag g;
  g.k = t.k;
  g.nodes.emplace_back();
  std::map<std::vector<Label>, Label> unique;
  std::vector<std::vector<Label>> stack;
  for (std::uint8_t bit : t.preorder) {
    if (bit == 1) {
      stack.emplace_back();
      stack.back().reserve(t.k);
      continue;
    }
    Label id = 0;
    if (stack.empty()) break;  // the whole tree is a single leaf
    stack.back().push_back(id);
    while (!stack.empty() && stack.back().size() == t.k) {
      auto [it, inserted] =
          unique.try_emplace(stack.back(), static_cast<Label>(g.nodes.size()));
      if (inserted) g.nodes.push_back(stack.back());
      id = it->second;
      stack.pop_back();
      if (!stack.empty()) stack.back().push_back(id);
    }
  }
  return g;
}

}  // namespace chainlab
