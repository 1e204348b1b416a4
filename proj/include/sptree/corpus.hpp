#pragma once

#include <random>
#include <vector>

#include "sptree/combinators.hpp"
#include "sptree/tree.hpp"

namespace sptree {

/// Seeded random finite scheme with weight-1-only cycles: 2..max_kinds kinds,
/// at most three successors each, weights in 1..max_weight, every kind
/// reachable from the root. Any heavy edge that closes a cycle is flattened
/// to weight 1, so the result is always finitely ramified.
TreeScheme random_finitely_ramified_scheme(std::mt19937_64& rng, int max_kinds = 6,
                                           std::int64_t max_weight = 3);

/// Random maximal path in the scheme: a short random prefix ending on some
/// tail cycle.
PathDescriptor random_maximal_path(std::mt19937_64& rng, const TreeScheme& scheme,
                                   int prefix_steps);

/// The finite-scheme test corpus: family trees of ranks 1..4 in both the
/// balanced and the countable variant, plus grafts over small periodic lists
/// of them.
struct CorpusEntry {
  std::string name;
  BuiltTree tree;
};
std::vector<CorpusEntry> family_corpus();

}  // namespace sptree
