#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/valuation.hpp"

using namespace sptree;
using namespace sptree::testing;

namespace {

ValuationChain manual_chain(std::int64_t degree,
                            std::vector<std::pair<std::int64_t, std::int64_t>> ef) {
  ValuationChain chain;
  chain.root_tags = {"v"};
  chain.nodes.push_back({});
  chain.level_index.push_back({0});
  ExtensionStep step;
  step.degree = degree;
  step.prescriptions.emplace_back(0, ef);
  std::vector<int> level;
  int index = 0;
  for (auto [e, f] : ef) {
    ChainNode child;
    child.level = 1;
    child.parent = 0;
    child.e_step = e;
    child.f_step = f;
    child.e_acc = e;
    child.f_acc = f;
    child.address = {index++};
    level.push_back(static_cast<int>(chain.nodes.size()));
    chain.nodes.push_back(std::move(child));
  }
  chain.steps.push_back(std::move(step));
  chain.level_index.push_back(std::move(level));
  return chain;
}

}  // namespace

TEST_CASE("fundamental equality per step") {
  CHECK(validate_step(manual_chain(6, {{2, 3}}), 0).ok);
  CHECK(validate_step(manual_chain(6, {{1, 3}, {1, 3}}), 0).ok);
  StepReport bad = validate_step(manual_chain(6, {{2, 2}}), 0);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0].first == "v");
}

TEST_CASE("balanced chains") {
  ValuationChain c1 = chain_from_balanced(t1b(), 1);
  REQUIRE(c1.steps.size() == 1);
  CHECK(c1.steps[0].degree == 3);
  REQUIRE(c1.steps[0].prescriptions.size() == 1);
  CHECK(c1.steps[0].prescriptions[0].second ==
        std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {1, 1}, {1, 1}});

  ValuationChain c2 = chain_from_balanced(
      build_rank_tree(Ordinal::nat(2), balanced3()).scheme(), 2);
  REQUIRE(c2.steps.size() == 2);
  CHECK(c2.steps[0].degree == 3);
  CHECK(c2.steps[1].degree == 3);
  // The spine node extends with ramifications 1 and 2, trivially inert.
  CHECK(c2.steps[0].prescriptions[0].second ==
        std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {2, 1}});
  CHECK(validate_chain(c2).ok);

  ValuationChain empty = chain_from_balanced(t1b(), 0);
  CHECK(empty.steps.empty());
  CHECK(empty.nodes.size() == 1);

  CHECK_THROWS_AS(chain_from_balanced(mixed_weights(), 2), input_error);
}

TEST_CASE("locally bounded chains take per-level lcm degrees") {
  ValuationChain chain = chain_from_locbound(mixed_weights(), 2);
  REQUIRE(chain.steps.size() == 2);
  CHECK(chain.steps[0].degree == 3);  // root weight
  CHECK(chain.steps[1].degree == 6);  // lcm{2, 3}

  // The weight-2 node splits into two extensions of inertia 3, the weight-3
  // node into three extensions of inertia 2.
  for (const auto& [node, ef] : chain.steps[1].prescriptions) {
    if (chain.nodes[node].kind == mixed_weights().kind_index("a"))
      CHECK(ef == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 3}, {1, 3}});
    else
      CHECK(ef ==
            std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {1, 2}, {1, 2}});
  }
  CHECK(validate_chain(chain).ok);

  // On a totally balanced scheme the lcm collapses and f stays 1.
  ValuationChain balanced = chain_from_locbound(t1b(), 2);
  for (const auto& [node, ef] : balanced.steps[1].prescriptions)
    for (const auto& [e, f] : ef) CHECK(f == 1);

  CHECK(validate_chain(chain_from_locbound(
            build_rank_tree(Ordinal::nat(2), countable()).scheme(), 3))
            .ok);
}

TEST_CASE("accumulated degrees multiply along the chain") {
  ValuationChain chain = chain_from_locbound(mixed_weights(), 4);
  for (const auto& node : chain.nodes) {
    if (node.parent < 0) continue;
    const ChainNode& parent = chain.nodes[node.parent];
    CHECK(node.e_acc == parent.e_acc * node.e_step);
    CHECK(node.f_acc == parent.f_acc * node.f_step);
  }
}

TEST_CASE("round trip through the induced tree") {
  ValuationChain c = chain_from_balanced(t1b(), 3);
  CHECK(weighted_tree_isomorphic(ramification_tree(c), unfold(t1b(), 3)));

  ValuationChain c2 = chain_from_locbound(mixed_weights(), 3);
  CHECK(weighted_tree_isomorphic(ramification_tree(c2), unfold(mixed_weights(), 3)));

  // Degenerate chain: one node per level, e = 1 everywhere.
  ValuationChain c3 = chain_from_balanced(t1c(), 4);
  UnfoldedTree t3 = ramification_tree(c3);
  CHECK(t3.size() == 5);
  for (const auto& node : t3.nodes)
    if (node.parent >= 0) CHECK(node.weight == 1);
}

TEST_CASE("staggered chains") {
  TreeScheme t1 = t1b();
  TreeScheme t2 = build_rank_tree(Ordinal::nat(2), balanced3()).scheme();
  TreeScheme t3 = build_rank_tree(Ordinal::nat(3), balanced3()).scheme();

  // A single root degenerates to the balanced chain.
  ValuationChain single = staggered_chain({{"M1", t1}}, 3);
  CHECK(validate_chain(single).ok);
  CHECK(weighted_tree_isomorphic(per_root_trees(single)[0].second,
                                 ramification_tree(chain_from_balanced(t1, 3))));

  ValuationChain chain = staggered_chain({{"M1", t2}, {"M2", t3}}, 4);
  CHECK(validate_chain(chain).ok);
  for (const auto& step : chain.steps) CHECK(step.degree == 3);

  // Root 2 stays single through step 1 and enters at step 2.
  auto roots = per_root_trees(chain);
  REQUIRE(roots.size() == 2);
  const UnfoldedTree& second = roots[1].second;
  REQUIRE(second.children[0].size() == 1);
  CHECK(second.nodes[second.children[0][0]].weight == 1);

  // Each root's tree past its entry level matches its scheme's truncation.
  CHECK(weighted_tree_isomorphic(subtree_at(roots[0].second, 0), unfold(t2, 4)));
  CHECK(weighted_tree_isomorphic(subtree_at(second, second.children[0][0]),
                                 unfold(t3, 3)));

  CHECK_THROWS_AS(staggered_chain({{"M1", t1}, {"M2", mixed_weights()}}, 2),
                  input_error);
  TreeScheme w4 = FamilyVariant{FamilyVariant::Tag::BalancedN, 4}.base_scheme();
  CHECK_THROWS_AS(staggered_chain({{"M1", t1}, {"M2", w4}}, 2), input_error);
}

TEST_CASE("forest rank suprema") {
  CHECK(forest_spr({Ordinal::nat(2), Ordinal::nat(3)}) == Ordinal::nat(3));
  CHECK(forest_spr({Ordinal::parse("w^1*1+1")}) == Ordinal::parse("w^1*1+1"));
  CHECK(forest_spr(EventualOrdinalSeq::increasing({Ordinal::omega(), 1})) ==
        Ordinal::omega());
  CHECK_THROWS_AS(forest_spr(std::vector<Ordinal>{}), input_error);
}
