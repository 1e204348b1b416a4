#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sptree/ordinal.hpp"
#include "sptree/tree.hpp"

namespace sptree {

/// Symbolic extension of a discrete valuation: per-edge ramification e and
/// inertia f over the parent, plus the accumulated degrees over the base.
/// Fields are never materialized; a level is just an index with a degree.
struct ChainNode {
  int level = 0;
  int parent = -1;  // index into ValuationChain::nodes
  std::int64_t e_step = 1, f_step = 1;
  std::int64_t e_acc = 1, f_acc = 1;
  int root = 0;   // index into root_tags
  Address address;  // child-index path within its root's induced tree
  int kind = -1;  // scheme kind driving this node's prescriptions, if any
};

/// One field-extension step: the degree [K_{i+1} : K_i] and, for every node
/// of the previous level, the list of (e, f) prescriptions for its
/// extensions. The fundamental equality demands sum(e*f) == degree per node.
struct ExtensionStep {
  std::int64_t degree = 1;
  std::vector<std::pair<int, std::vector<std::pair<std::int64_t, std::int64_t>>>>
      prescriptions;  // (node index, [(e, f), ...])
};

struct ValuationChain {
  std::vector<std::string> root_tags;  // one entry for a DVR base, several for
                                       // a Dedekind base with chosen schedule
  std::vector<ChainNode> nodes;        // roots first, then level by level
  std::vector<ExtensionStep> steps;
  std::vector<std::vector<int>> level_index;  // node indices per level

  std::string node_id(int node) const;  // "v" or "M2:0.1"
  int depth() const { return static_cast<int>(steps.size()); }
};

struct StepReport {
  bool ok = true;
  /// (node id, message) for every fundamental-equality violation.
  std::vector<std::pair<std::string, std::string>> failures;
};

/// Fundamental equality per node: sum over prescriptions of e*f equals the
/// step degree.
StepReport validate_step(const ValuationChain& chain, int step_index);

struct ChainReport {
  bool ok = true;
  std::vector<StepReport> steps;
  std::vector<std::string> structural_failures;
};

/// Full validation: consecutive levels, prescriptions covering exactly the
/// previous level, per-step fundamental equality, and multiplicativity of
/// the accumulated degrees.
ChainReport validate_chain(const ValuationChain& chain);

/// Chain realizing a balanced scheme over a DVR: step i has degree equal to
/// the common level-(i-1) weight and every residue extension is trivial
/// (f = 1 throughout).
ValuationChain chain_from_balanced(const TreeScheme& scheme, int depth);

/// Chain realizing an arbitrary finite scheme over a DVR with finite residue
/// field: step degree is the lcm d of the previous level's node weights and a
/// node of weight w extends with (e_r, d/w) over its edges.
ValuationChain chain_from_locbound(const TreeScheme& scheme, int depth);

/// Multi-root chain over a Dedekind base with countably many maximal ideals:
/// root j idles (single extension, e = 1) until global step j and from then
/// on follows its scheme's levels; all schemes must be totally balanced with
/// one common weight so every global step has a single degree.
ValuationChain staggered_chain(
    const std::vector<std::pair<std::string, TreeScheme>>& forest, int depth);

/// The chain's nodes as an explicit weighted tree (edge weights e_step).
/// Requires a single root; checks that edges join consecutive levels and
/// that no node's outbound weight exceeds the step degree.
UnfoldedTree ramification_tree(const ValuationChain& chain);

/// One induced tree per root (the restriction of the chain to that root).
std::vector<std::pair<std::string, UnfoldedTree>> per_root_trees(
    const ValuationChain& chain);

/// Supremum of per-root ranks: a finite list or a closed sequence descriptor
/// (the route to limit ranks over countably many roots).
Ordinal forest_spr(const std::vector<Ordinal>& per_root);
Ordinal forest_spr(const EventualOrdinalSeq& per_root);

}  // namespace sptree
