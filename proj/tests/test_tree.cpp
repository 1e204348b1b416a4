#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/tree.hpp"

using namespace sptree;
using namespace sptree::testing;

TEST_CASE("addresses and path descriptors round trip") {
  CHECK(address_str({}) == "r");
  CHECK(address_str({0, 2, 1}) == "0.2.1");
  CHECK(parse_address("r") == Address{});
  CHECK(parse_address("0.2.1") == Address{0, 2, 1});
  CHECK_THROWS_AS(parse_address("0.x"), input_error);

  PathDescriptor p;
  p.prefix = {0, 2};
  p.cycle = {1, 0};
  CHECK(path_str(p) == "0.2~1.0");
  CHECK(parse_path("0.2~1.0") == p);
  p.anchor = {1};
  CHECK(parse_path(path_str(p)) == p);
  CHECK(parse_path("~0") == PathDescriptor{{}, {}, {0}});
  CHECK_THROWS_AS(parse_path("0.1~"), input_error);
}

TEST_CASE("unfold counts") {
  CHECK(unfold(t1b(), 2).size() == 13);  // 1 + 3 + 9
  CHECK(unfold(t1b(), 0).size() == 1);
  CHECK(unfold(t1c(), 5).size() == 6);  // a chain
}

TEST_CASE("unfold truncations are prefix-consistent") {
  std::vector<TreeScheme> schemes = {t1b(), t1c(), graft_t1b().scheme, mixed_weights()};
  for (const auto& s : schemes) {
    for (int d = 0; d < 6; ++d) {
      UnfoldedTree big = unfold(s, d + 1);
      UnfoldedTree small = unfold(s, d);
      std::set<std::pair<std::string, std::string>> big_set, small_set;
      for (const auto& n : big.nodes)
        if (static_cast<int>(n.address.size()) <= d)
          big_set.insert({address_str(n.address), n.label});
      for (const auto& n : small.nodes)
        small_set.insert({address_str(n.address), n.label});
      CHECK(big_set == small_set);
    }
  }
}

TEST_CASE("node weight") {
  CHECK(node_weight(t1b(), 0) == 3);
  GraftScheme g = graft_t1b();
  CHECK(node_weight(g.scheme, g.scheme.kind_index("x0")) == 3);  // 1 + 2
  CHECK(node_weight(t1c(), 0) == 1);
}

TEST_CASE("weight classification") {
  WeightClass tb = check_weight_class(t1b());
  CHECK(tb.label == WeightClassLabel::TotallyBalanced);
  CHECK(tb.common_weight == 3);

  CHECK(check_weight_class(graft_t1b().scheme).label ==
        WeightClassLabel::TotallyBalanced);

  WeightClass mixed = check_weight_class(mixed_weights());
  CHECK(mixed.label == WeightClassLabel::LocallyBounded);
  REQUIRE(mixed.level_weights.size() >= 2);
  CHECK(mixed.level_weights[1] == std::vector<std::int64_t>{2, 3});

  // Balanced but not totally balanced: levels alternate between weights.
  TreeScheme alternating;
  alternating.kinds = {"a", "b"};
  alternating.root = 0;
  alternating.succ = {{{1, 1}, {1, 1}}, {{0, 1}, {0, 1}, {0, 1}}};
  alternating.validate();
  CHECK(check_weight_class(alternating).label == WeightClassLabel::Balanced);
}

TEST_CASE("finite ramification") {
  CHECK(all_paths_finitely_ramified(t1b()));
  CHECK(all_paths_finitely_ramified(graft_t1b().scheme));

  RamificationCheck bad = check_finite_ramification(heavy_loop());
  CHECK_FALSE(bad.finitely_ramified);
  REQUIRE(bad.witness.has_value());
  CHECK_FALSE(path_weight(heavy_loop(), *bad.witness).finite);
}

TEST_CASE("path weight") {
  TreeScheme g = graft_t1b().scheme;
  // Stay on the spine: unramified.
  CHECK(path_weight(g, parse_path("~0")) == PathWeight{true, 1});
  // Cross the branch once, then circle the inner kind.
  CHECK(path_weight(g, parse_path("1~0")) == PathWeight{true, 2});
  // A weight-2 edge inside the cycle means infinite weight.
  CHECK_FALSE(path_weight(heavy_loop(), parse_path("~1")).finite);
  CHECK_THROWS_AS(path_weight(g, parse_path("5~0")), input_error);
}

TEST_CASE("path weight is multiplicative over prefix and tail") {
  std::mt19937_64 rng(99);
  TreeScheme g = spine_graft({spine_graft({t1b()}, 2).scheme}, 2).scheme;
  for (int i = 0; i < 40; ++i) {
    PathDescriptor path = random_maximal_path(rng, g, 4);
    PathWeight total = path_weight(g, path);
    // Split at an arbitrary point of the prefix.
    std::size_t cut = i % (path.prefix.size() + 1);
    PathDescriptor head{{}, {path.prefix.begin(), path.prefix.begin() + cut}, {}};
    PathDescriptor tail;
    tail.anchor = head.prefix;
    tail.prefix.assign(path.prefix.begin() + cut, path.prefix.end());
    tail.cycle = path.cycle;
    CHECK(total.value ==
          path_weight(g, head).value * path_weight(g, tail).value);
  }
}

TEST_CASE("unramified tail") {
  TreeScheme g = graft_t1b().scheme;
  PathDescriptor spine = parse_path("~0");
  CHECK(unramified_tail(g, spine) == spine);

  // One heavy edge at step 3: suffix starts at step 4.
  PathDescriptor p = parse_path("0.0.0.1~0");
  PathDescriptor tail = unramified_tail(g, p);
  CHECK(tail.anchor.size() == 4);
  CHECK(tail.prefix.empty());
  CHECK(path_weight(g, tail) == PathWeight{true, 1});

  // Heavy edges at steps 1 and 5: suffix starts at step 6.
  TreeScheme g2 = spine_graft({g}, 2).scheme;
  PathDescriptor q = parse_path("0.1.0.0.0.1~0");
  PathDescriptor tail2 = unramified_tail(g2, q);
  CHECK(tail2.anchor.size() == 6);
  CHECK(path_weight(g2, tail2) == PathWeight{true, 1});

  CHECK_THROWS_AS(unramified_tail(heavy_loop(), parse_path("~1")), input_error);
}

TEST_CASE("tail class enumeration") {
  auto t1 = enumerate_tail_kinds(t1b());
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].id == "r");

  auto graft_tails = enumerate_tail_kinds(graft_t1b().scheme);
  CHECK(graft_tails.size() == 2);  // spine cycle and inner cycle

  CHECK(enumerate_tail_kinds(t1c()).size() == 1);
  CHECK_THROWS_AS(enumerate_tail_kinds(heavy_loop()), input_error);

  // Tails of any-weight cycles exist even for infinitely ramified schemes.
  CHECK(enumerate_cycle_tails(heavy_loop(), false).size() == 1);
}

TEST_CASE("representative paths land on their tails") {
  std::vector<TreeScheme> schemes = {t1b(), graft_t1b().scheme, mixed_weights(),
                                     spine_graft({t1c(), t1b()}, 2).scheme};
  for (const auto& s : schemes)
    for (const auto& tail : enumerate_tail_kinds(s)) {
      PathDescriptor rep = representative_path(s, tail);
      auto kinds = infinitely_visited_kinds(s, rep);
      std::vector<int> expected = tail.cycle_kinds;
      std::sort(expected.begin(), expected.end());
      CHECK(kinds == expected);
    }
}

TEST_CASE("weighted tree isomorphism") {
  UnfoldedTree a = unfold(t1b(), 3);
  UnfoldedTree b = unfold(t1b(), 3);
  CHECK(weighted_tree_isomorphic(a, b));

  // Permuting children preserves the isomorphism class.
  TreeScheme permuted = graft_t1b().scheme;
  std::swap(permuted.succ[0][0], permuted.succ[0][1]);
  CHECK(weighted_tree_isomorphic(unfold(graft_t1b().scheme, 4), unfold(permuted, 4)));

  // Changing a weight does not.
  TreeScheme heavier = graft_t1b().scheme;
  heavier.succ[0][1].weight = 3;
  CHECK_FALSE(weighted_tree_isomorphic(unfold(graft_t1b().scheme, 4),
                                       unfold(heavier, 4)));
  CHECK_FALSE(weighted_tree_isomorphic(unfold(t1b(), 2), unfold(t1b(), 3)));
}

TEST_CASE("scheme validation rejects malformed input") {
  TreeScheme s = t1b();
  s.succ[0].clear();
  CHECK_THROWS_AS(s.validate(), input_error);

  TreeScheme unreachable;
  unreachable.kinds = {"a", "b"};
  unreachable.root = 0;
  unreachable.succ = {{{0, 1}}, {{1, 1}}};
  CHECK_THROWS_AS(unreachable.validate(), input_error);

  TreeScheme zero_weight = t1b();
  zero_weight.succ[0][0].weight = 0;
  CHECK_THROWS_AS(zero_weight.validate(), input_error);
}
