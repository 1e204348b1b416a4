#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/sprank.hpp"

using namespace sptree;
using namespace sptree::testing;

TEST_CASE("graft over one balanced base") {
  GraftScheme g = graft_t1b();
  REQUIRE(g.scheme.kinds.size() == 2);
  int spine = g.scheme.kind_index("x0");
  int inner = g.scheme.kind_index("t1.r");
  REQUIRE(spine >= 0);
  REQUIRE(inner >= 0);
  CHECK(g.scheme.root == spine);
  REQUIRE(g.scheme.succ[spine].size() == 2);
  CHECK(g.scheme.succ[spine][0] == SchemeEdge{spine, 1});
  CHECK(g.scheme.succ[spine][1] == SchemeEdge{inner, 2});
  REQUIRE(g.scheme.succ[inner].size() == 3);
  for (const auto& e : g.scheme.succ[inner]) CHECK(e == SchemeEdge{inner, 1});

  // The spine path is unramified.
  CHECK(path_weight(g.scheme, parse_path("~0")) == PathWeight{true, 1});
}

TEST_CASE("graft alternates branch targets over the period") {
  TreeScheme a = t1b(), b = t1c();
  GraftScheme g = spine_graft({a, b}, 2);
  int x0 = g.scheme.kind_index("x0");
  int x1 = g.scheme.kind_index("x1");
  REQUIRE(x0 >= 0);
  REQUIRE(x1 >= 0);
  CHECK(g.scheme.succ[x0][0].child == x1);
  CHECK(g.scheme.succ[x1][0].child == x0);
  CHECK(g.scheme.succ[x0][1].child == g.scheme.kind_index("t1.r"));
  CHECK(g.scheme.succ[x1][1].child == g.scheme.kind_index("t2.r"));
  CHECK(g.scheme.succ[x0][1].weight == 2);
}

TEST_CASE("the branch edge is the only heavy edge at the spine") {
  for (const auto& entry : family_corpus()) {
    if (!entry.tree.is_graft()) continue;
    const GraftScheme& g = entry.tree.graft();
    for (int i = 0; i < g.period; ++i) {
      int heavy = 0;
      for (const auto& e : g.scheme.succ[i])
        if (e.weight >= 2) ++heavy;
      CHECK(heavy == 1);
      CHECK(g.scheme.succ[i][1].weight == g.branch_weight);
    }
  }
}

TEST_CASE("grafting preserves finite ramification") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 25; ++i) {
    TreeScheme a = random_finitely_ramified_scheme(rng);
    TreeScheme b = random_finitely_ramified_scheme(rng);
    CHECK(all_paths_finitely_ramified(spine_graft({a, b}, 2).scheme));
  }
}

TEST_CASE("family trees at small ranks") {
  BuiltTree t1 = build_rank_tree(Ordinal::nat(1), balanced3());
  CHECK(t1.scheme().kinds.size() == 1);
  CHECK(node_weight(t1.scheme(), 0) == 3);

  BuiltTree t2 = build_rank_tree(Ordinal::nat(2), balanced3());
  CHECK(t2.scheme().kinds.size() == 2);
  for (std::size_t k = 0; k < t2.scheme().kinds.size(); ++k)
    CHECK(node_weight(t2.scheme(), static_cast<int>(k)) == 3);

  BuiltTree t3 = build_rank_tree(Ordinal::nat(3), balanced3());
  CHECK(t3.scheme().kinds.size() == 3);

  BuiltTree c2 = build_rank_tree(Ordinal::nat(2), countable());
  for (std::size_t k = 0; k < c2.scheme().kinds.size(); ++k)
    CHECK(c2.scheme().succ[k].size() <= 2);

  CHECK_THROWS_AS(build_rank_tree(Ordinal(), balanced3()), input_error);
  CHECK_THROWS_AS(build_rank_tree(Ordinal::omega(), balanced3()), input_error);
}

TEST_CASE("family invariants up to rank 4") {
  for (int rank = 1; rank <= 4; ++rank) {
    BuiltTree b = build_rank_tree(Ordinal::nat(rank), balanced3());
    WeightClass wc = check_weight_class(b.scheme());
    CHECK(wc.label == WeightClassLabel::TotallyBalanced);
    CHECK(wc.common_weight == 3);

    BuiltTree c = build_rank_tree(Ordinal::nat(rank), countable());
    const TreeScheme& s = c.scheme();
    bool unramified_paths_unique = true;
    // Exactly one maximal path avoids every branch edge: the weight-1
    // subgraph reachable from the root must be deterministic.
    std::vector<char> seen(s.kinds.size(), 0);
    std::vector<int> stack{s.root};
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      if (seen[k]) continue;
      seen[k] = 1;
      int light = 0;
      for (const auto& e : s.succ[k])
        if (e.weight == 1) {
          ++light;
          stack.push_back(e.child);
        }
      if (light != 1) unramified_paths_unique = false;
      CHECK(s.succ[k].size() <= 2);
    }
    CHECK(unramified_paths_unique);
  }
}

TEST_CASE("lazy interpretation agrees with the finite presentation") {
  for (int rank = 1; rank <= 3; ++rank)
    for (const auto& variant : {balanced3(), countable()}) {
      BuiltTree tree = build_rank_tree(Ordinal::nat(rank), variant);
      CHECK(weighted_tree_isomorphic(tree.unfold_lazy(5), unfold(tree.scheme(), 5)));
    }
}

TEST_CASE("lazy trees above limit ranks") {
  BuiltTree t = build_rank_tree(Ordinal::omega().succ(), balanced3());
  CHECK(t.lazy());

  // The root is the spine start with a weight-1 and a weight-2 edge.
  BuiltTree::NodeInfo root = t.node({});
  CHECK(root.label == "x0");
  CHECK(root.edge_weights == std::vector<std::int64_t>{1, 2});

  // The first branch subtree is the rank-1 base: three weight-1 edges.
  BuiltTree::NodeInfo branch = t.node({1});
  CHECK(branch.edge_weights == std::vector<std::int64_t>{1, 1, 1});

  // Deeper spine positions branch into higher-rank arguments.
  BuiltTree::NodeInfo second = t.node({0, 1});
  CHECK(second.edge_weights.size() == 2);

  // Truncations stay totally balanced with weight 3.
  UnfoldedTree cut = t.unfold_lazy(4);
  for (std::size_t i = 0; i < cut.nodes.size(); ++i) {
    if (static_cast<int>(cut.nodes[i].address.size()) == 4) continue;
    std::int64_t w = 0;
    for (int child : cut.children[i]) w += cut.nodes[child].weight;
    CHECK(w == 3);
  }

  BuiltTree deeper = build_rank_tree(Ordinal::parse("w^2*1+1"), balanced3());
  CHECK(deeper.lazy());
  CHECK(deeper.unfold_lazy(3).size() > 1);
}

TEST_CASE("embedding maximal paths") {
  GraftScheme g = graft_t1b();
  PathDescriptor inner = parse_path("~0");

  PathDescriptor lifted = embed_path(g, 1, inner);
  CHECK(path_weight(g.scheme, lifted) == PathWeight{true, 2});

  PathDescriptor lifted3 = embed_path(g, 3, inner);
  CHECK(lifted3.prefix == std::vector<int>{0, 0, 1});
  CHECK(path_weight(g.scheme, lifted3) == PathWeight{true, 2});

  // An inner path of weight 2 lifts to weight 4.
  GraftScheme nested = spine_graft({g.scheme}, 2);
  PathDescriptor heavy_inner = parse_path("1~0");
  REQUIRE(path_weight(g.scheme, heavy_inner) == PathWeight{true, 2});
  PathDescriptor lifted_heavy = embed_path(nested, 3, heavy_inner);
  CHECK(path_weight(nested.scheme, lifted_heavy) == PathWeight{true, 4});

  CHECK_THROWS_AS(embed_path(g, 0, inner), input_error);
  CHECK_THROWS_AS(embed_path(g, 1, parse_path("0.1")), input_error);
}
