#pragma once

// JSON forms of chains, rooted DAGs and k-ary trees.
//
//   chain: {"k":2,"n":3,"targets":[[0],[1],[0]]}   targets[0] is node 1
//   dag:   {"k":2,"nodes":[[],[0,0],[1,1]],"root":2}
//   tree:  null for a leaf, otherwise an array of exactly k subtrees

#include "chainlab/chain.hpp"
#include "chainlab/decompress.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Report a line number rather than a byte offset.
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw FormatError("line " + std::to_string(line), e.what());
  }
}

inline std::uint64_t read_uint(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw FormatError(field, "expected a non-negative integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

inline const Json& member(const Json& obj, const char* name) {
  if (!obj.is_object()) throw FormatError("", "expected a JSON object");
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(name, "missing field");
  return *it;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chain

inline Json chain_to_json(const Chain& c) {
  Json targets = Json::array();
  for (const auto& row : c.targets) targets.push_back(row);
  return Json{{"k", c.k}, {"n", c.n()}, {"targets", targets}};
}

inline Chain chain_from_json(const Json& j) {
  Chain c;
  const auto k = detail::read_uint(detail::member(j, "k"), "k");
  if (k < 2) throw FormatError("k", "arity must be >= 2, got " + std::to_string(k));
  c.k = static_cast<unsigned>(k);
  const auto n = detail::read_uint(detail::member(j, "n"), "n");
  const Json& targets = detail::member(j, "targets");
  if (!targets.is_array()) throw FormatError("targets", "expected an array");
  if (targets.size() != n) {
    throw FormatError("targets", "has " + std::to_string(targets.size()) +
                                     " rows but n = " + std::to_string(n));
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string row_field = "targets[" + std::to_string(i) + "]";
    const Json& row = targets[i];
    if (!row.is_array() || row.size() != c.k - 1) {
      throw FormatError(row_field, "expected an array of " + std::to_string(c.k - 1) +
                                       " pointer targets");
    }
    std::vector<Label> parsed;
    for (std::size_t s = 0; s < row.size(); ++s) {
      const std::string field = row_field + "[" + std::to_string(s) + "]";
      const auto t = detail::read_uint(row[s], field);
      if (t > i) {
        throw FormatError(field, "target " + std::to_string(t) + " of node " +
                                     std::to_string(i + 1) + " must be < " +
                                     std::to_string(i + 1));
      }
      parsed.push_back(static_cast<Label>(t));
    }
    c.targets.push_back(std::move(parsed));
  }
  return c;
}

inline Chain chain_from_json_text(const std::string& text) {
  return chain_from_json(detail::parse_text(text));
}

// ---------------------------------------------------------------------------
// DAG

inline Json dag_to_json(const RootedDag& g) {
  Json nodes = Json::array();
  for (const auto& ch : g.nodes) nodes.push_back(ch);
  return Json{{"k", g.k}, {"nodes", nodes}, {"root", g.root()}};
}

inline RootedDag dag_from_json(const Json& j) {
  RootedDag g;
  const auto k = detail::read_uint(detail::member(j, "k"), "k");
  if (k < 2) throw FormatError("k", "arity must be >= 2");
  g.k = static_cast<unsigned>(k);
  const Json& nodes = detail::member(j, "nodes");
  if (!nodes.is_array() || nodes.empty()) {
    throw FormatError("nodes", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string field = "nodes[" + std::to_string(i) + "]";
    if (!nodes[i].is_array()) throw FormatError(field, "expected an array");
    std::vector<Label> ch;
    for (std::size_t s = 0; s < nodes[i].size(); ++s) {
      ch.push_back(static_cast<Label>(
          detail::read_uint(nodes[i][s], field + "[" + std::to_string(s) + "]")));
    }
    g.nodes.push_back(std::move(ch));
  }
  if (j.contains("root")) {
    const auto root = detail::read_uint(j["root"], "root");
    if (root != g.root()) throw FormatError("root", "root must be the last node");
  }
  if (auto e = validate(g)) throw FormatError("nodes", *e);
  return g;
}

inline RootedDag dag_from_json_text(const std::string& text) {
  return dag_from_json(detail::parse_text(text));
}

// ---------------------------------------------------------------------------
// Tree

// Written without recursion so that deep combs serialize safely.
inline std::string tree_to_json_text(const KTree& t) {
  std::string out;
  std::vector<unsigned> remaining;  // children still to emit per open array
  for (std::uint8_t bit : t.preorder) {
    if (!remaining.empty() && remaining.back() < t.k) out += ',';
    if (!remaining.empty()) --remaining.back();
    if (bit == 1) {
      out += '[';
      remaining.push_back(t.k);
      continue;
    }
    out += "null";
    while (!remaining.empty() && remaining.back() == 0) {
      out += ']';
      remaining.pop_back();
    }
  }
  return out;
}

inline KTree tree_from_json(const Json& j, unsigned expected_k = 0) {
  KTree t;
  t.preorder.clear();
  t.k = expected_k;
  struct Frame {
    const Json* node;
    std::string field;
  };
  std::vector<Frame> stack{{&j, "tree"}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.node->is_null()) {
      t.preorder.push_back(0);
      continue;
    }
    if (!f.node->is_array()) throw FormatError(f.field, "expected null or an array");
    const auto arity = static_cast<unsigned>(f.node->size());
    if (t.k == 0) t.k = arity;
    if (arity != t.k || arity < 2) {
      throw FormatError(f.field, "expected " + std::to_string(t.k) + " children, got " +
                                     std::to_string(arity));
    }
    t.preorder.push_back(1);
    for (std::size_t i = arity; i-- > 0;) {
      stack.push_back({&(*f.node)[i], f.field + "[" + std::to_string(i) + "]"});
    }
  }
  if (t.k == 0) t.k = 2;  // a lone leaf carries no arity
  return t;
}

inline KTree tree_from_json_text(const std::string& text, unsigned expected_k = 0) {
  return tree_from_json(detail::parse_text(text), expected_k);
}

}  // namespace chainlab
