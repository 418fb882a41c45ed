#include "chainlab/json_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace chainlab {
namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ChainJson, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned k = 2 + static_cast<unsigned>(uniform_below(rng, 3));
    const Chain c = random_chain(k, static_cast<unsigned>(uniform_below(rng, 30)), rng);
    EXPECT_EQ(chain_from_json_text(chain_to_json(c).dump()), c);
  }
  EXPECT_EQ(chain_to_json(Chain{2, {{0}, {1}}}).dump(), R"({"k":2,"n":2,"targets":[[0],[1]]})");
}

TEST(ChainJson, FieldDiagnostics) {
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":2,"n":2,"targets":[[0],[2]]})"); }),
            "targets[1][0]");
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":3,"n":1,"targets":[[0]]})"); }),
            "targets[0]");
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":2,"n":2,"targets":[[0]]})"); }),
            "targets");
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":1,"n":0,"targets":[]})"); }), "k");
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":2,"targets":[]})"); }), "n");
  EXPECT_EQ(field_of([] { chain_from_json_text(R"({"k":2,"n":1,"targets":[[-1]]})"); }),
            "targets[0][0]");
  EXPECT_EQ(field_of([] { chain_from_json_text("{\"k\":2,\n\"n\":}"); }), "line 2");
}

TEST(DagJson, RoundTripAndValidation) {
  const RootedDag g{2, {{}, {0, 0}, {1, 1}}};
  EXPECT_EQ(dag_to_json(g).dump(), R"({"k":2,"nodes":[[],[0,0],[1,1]],"root":2})");
  EXPECT_EQ(dag_from_json_text(dag_to_json(g).dump()), g);
  EXPECT_EQ(field_of([] { dag_from_json_text(R"({"k":2,"nodes":[[],[0,0],[0,0]]})"); }),
            "nodes");
  EXPECT_EQ(field_of([] { dag_from_json_text(R"({"k":2,"nodes":[[],[0,0]],"root":0})"); }),
            "root");
  EXPECT_EQ(field_of([] { dag_from_json_text(R"({"k":2,"nodes":[[],[0,"a"]]})"); }),
            "nodes[1][1]");
}

TEST(TreeJson, Examples) {
  const KTree leaf = KTree::leaf(2);
  const KTree one = KTree::node({leaf, leaf});
  EXPECT_EQ(tree_to_json_text(leaf), "null");
  EXPECT_EQ(tree_to_json_text(one), "[null,null]");
  EXPECT_EQ(tree_to_json_text(KTree::node({one, leaf})), "[[null,null],null]");
  EXPECT_EQ(tree_from_json_text("[null,[null,null]]"), KTree::node({leaf, one}));
  EXPECT_EQ(tree_from_json_text("null").k, 2u);
  EXPECT_EQ(tree_from_json_text("null", 3).k, 3u);
  EXPECT_EQ(field_of([] { tree_from_json_text("[null,[null,null,null]]"); }), "tree[1]");
  EXPECT_EQ(field_of([] { tree_from_json_text("[null]"); }), "tree");
  EXPECT_EQ(field_of([] { tree_from_json_text("[null,1]"); }), "tree[1]");
  EXPECT_EQ(field_of([] { tree_from_json_text("[null,null]", 3); }), "tree");
}

TEST(TreeJson, RoundTripAllSmallTrees) {
  for (unsigned k : {2u, 3u}) {
    for (unsigned size = 0; size <= (k == 2 ? 6u : 4u); ++size) {
      for (const auto& shape : oracle::all_trees(k, size)) {
        const KTree t{k, shape};
        const std::string text = tree_to_json_text(t);
        EXPECT_EQ(tree_from_json_text(text, k), t);
        EXPECT_EQ(Json::parse(text).dump(), text);
      }
    }
  }
}

TEST(TreeJson, DeepCombDoesNotRecurse) {
  const KTree comb = decompress_tree(all_sink_chain(2, 20000)).tree;
  const std::string text = tree_to_json_text(comb);
  KTree back = tree_from_json_text(text, 2);
  EXPECT_EQ(back, comb);
}

}  // namespace
}  // namespace chainlab
