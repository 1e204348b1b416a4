#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/ideal.hpp"

using namespace sptree;
using namespace sptree::testing;

TEST_CASE("ideal expressions parse and validate") {
  IdealExpr e = IdealExpr::parse("0.2^1*1.0^2");
  REQUIRE(e.factors.size() == 2);
  CHECK(e.factors[0].vertex == Address{0, 2});
  CHECK(e.factors[1].exponent == 2);
  CHECK(e.str() == "0.2^1*1.0^2");
  CHECK(IdealExpr::parse("r").factors[0].exponent == 1);

  TreeScheme s = t1b();
  CHECK_THROWS_AS(IdealExpr::parse("r^1*0^1").validate(s), input_error);  // mixed levels
  CHECK_THROWS_AS(IdealExpr::parse("0^1*0^2").validate(s), input_error);  // duplicate
  CHECK_THROWS_AS(IdealExpr::parse("0^0"), input_error);
}

TEST_CASE("ideal values along paths") {
  TreeScheme g = graft_t1b().scheme;
  PathDescriptor through_branch = parse_path("1~0");  // crosses the weight-2 edge
  PathDescriptor spine = parse_path("~0");

  // Unramified continuation: value 1.
  CHECK(nu(g, IdealExpr::parse("r^1"), spine) == 1);
  // One weight-2 edge after the vertex: value 2.
  CHECK(nu(g, IdealExpr::parse("r^1"), through_branch) == 2);
  // Vertex off the path contributes nothing.
  CHECK(nu(g, IdealExpr::parse("1^1"), spine) == 0);
  // On the path at its own level: the remaining weight is 1.
  CHECK(nu(g, IdealExpr::parse("1^1"), through_branch) == 1);
  // Exponents scale the value.
  CHECK(nu(g, IdealExpr::parse("r^3"), through_branch) == 6);

  CHECK_THROWS_AS(nu(g, IdealExpr::parse("r^1"), parse_path("0.1")), input_error);
}

TEST_CASE("ideal values add over products") {
  std::mt19937_64 rng(808);
  TreeScheme g = spine_graft({graft_t1b().scheme, t1b()}, 2).scheme;
  for (int i = 0; i < 30; ++i) {
    PathDescriptor path = random_maximal_path(rng, g, 5);
    UnfoldedTree cut = unfold(g, 2);
    // Two distinct level-2 vertices: one on the path if possible.
    std::vector<Address> level2;
    for (const auto& node : cut.nodes)
      if (node.address.size() == 2) level2.push_back(node.address);
    IdealExpr a{{{level2[i % level2.size()], 1}}};
    IdealExpr b{{{level2[(i + 3) % level2.size()], 2}}};
    if (a.factors[0].vertex == b.factors[0].vertex) continue;
    IdealExpr product{{a.factors[0], b.factors[0]}};
    CHECK(nu(g, product, path) == nu(g, a, path) + nu(g, b, path));
  }
}

TEST_CASE("radical ideals") {
  TreeScheme g = graft_t1b().scheme;
  // A square is never radical.
  CHECK_FALSE(is_radical(t1b(), IdealExpr::parse("r^2")));
  // All continuations in the balanced base are unramified.
  CHECK(is_radical(t1b(), IdealExpr::parse("r^1")));
  // A spine vertex sees the weight-2 branch.
  CHECK_FALSE(is_radical(g, IdealExpr::parse("r^1")));
  CHECK_FALSE(is_radical(g, IdealExpr::parse("0^1")));
  // The inner vertex does not.
  CHECK(is_radical(g, IdealExpr::parse("1^1")));
}

TEST_CASE("criticality of maximal ideals") {
  TreeScheme g = graft_t1b().scheme;
  CHECK_FALSE(is_critical(t1b(), parse_path("~0")));
  CHECK(is_critical(g, parse_path("~0")));            // the spine
  CHECK_FALSE(is_critical(g, parse_path("1~0")));     // embedded inner path
}

TEST_CASE("stage membership with witnesses") {
  TreeScheme g = graft_t1b().scheme;
  PathDescriptor spine = parse_path("~0");

  CHECK(crit_alpha_membership(g, spine, 0));
  CHECK(crit_alpha_membership(g, spine, 1));
  CHECK_FALSE(crit_alpha_membership(g, spine, 2));

  auto witness = criticality_witness(g, spine, 1, 2);
  REQUIRE(witness.has_value());
  CHECK(witness->nu_value >= 2);
  CHECK(witness->vertex == Address{0, 0});
  // The witness passes through the vertex.
  CHECK(witness->witness.prefix[0] == 0);
  CHECK(witness->witness.prefix[1] == 0);

  // No witness into stage 1 exists from the inner kind.
  CHECK_FALSE(criticality_witness(g, parse_path("1~0"), 1, 2).has_value());
}

TEST_CASE("ring side agrees with the tree side on the corpus") {
  for (const auto& entry : family_corpus()) {
    if (entry.tree.lazy()) continue;
    const TreeScheme& s = entry.tree.scheme();
    CritAnalysis analysis = analyze_crit(s);
    for (std::size_t t = 0; t < analysis.tails.size(); ++t) {
      PathDescriptor path = representative_path(s, analysis.tails[t]);
      for (int alpha = 0; alpha <= 4; ++alpha) {
        CAPTURE(entry.name);
        CAPTURE(analysis.tails[t].id);
        CHECK(crit_alpha_membership(s, path, alpha) ==
              analysis.tail_in_stage(t, alpha));
      }
    }
  }
}

TEST_CASE("non-critical ideals contain radical vertex ideals") {
  TreeScheme g = graft_t1b().scheme;
  PathDescriptor inner = parse_path("1~0");
  IdealExpr radical = radical_ideal_in(g, inner);
  CHECK(is_radical(g, radical));
  CHECK(nu(g, radical, inner) >= 1);

  CHECK_THROWS_AS(radical_ideal_in(g, parse_path("~0")), input_error);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    TreeScheme s = random_finitely_ramified_scheme(rng);
    PathDescriptor path = random_maximal_path(rng, s, 3);
    if (is_critical(s, path)) continue;
    IdealExpr witness = radical_ideal_in(s, path);
    CHECK(is_radical(s, witness));
    CHECK(nu(s, witness, path) >= 1);
  }
}
