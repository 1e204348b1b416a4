#pragma once

#include <vector>

#include "sptree/combinators.hpp"
#include "sptree/ordinal.hpp"
#include "sptree/tree.hpp"

namespace sptree {

/// Result of the criticality fixpoint on a finite scheme. Stage 0 contains
/// every tail class; stage b+1 keeps the tails whose cycle kinds all admit a
/// witness: an infinite finitely ramified path of weight > 1 whose own tail
/// is a stage-b survivor. The stages strictly shrink until empty, so the
/// heights are finite on finite schemes.
struct CritAnalysis {
  std::vector<TailDescriptor> tails;
  /// in_crit[b][t]: tail t survives stage b, for b = 0..empty_stage.
  std::vector<std::vector<char>> in_crit;
  /// witness_flag[b][k]: from kind k there is a path crossing a weight >= 2
  /// edge whose tail survives stage b (the condition entering stage b+1).
  std::vector<std::vector<char>> witness_flag;
  int empty_stage = 0;  // least b with no survivors
  std::vector<int> height;  // per tail: least b with the tail dropped

  bool tail_in_stage(std::size_t tail, int stage) const;
  /// Stage membership for the set of kinds a path visits infinitely often.
  bool kinds_in_stage(const std::vector<int>& inf_kinds, int stage) const;
  int kinds_height(const std::vector<int>& inf_kinds) const;
};

CritAnalysis analyze_crit(const TreeScheme& scheme);

/// Tail classes surviving the given stage.
std::vector<TailDescriptor> crit_fixpoint(const TreeScheme& scheme, int stage);

/// Height of a tail class: the first stage it drops out of.
Ordinal sph_path(const TreeScheme& scheme, const TailDescriptor& tail);
Ordinal sph_path(const TreeScheme& scheme, const PathDescriptor& path);

/// Rank of the presented tree by the definitional fixpoint: the first stage
/// with no surviving tail, always a finite successor on finite schemes.
Ordinal spr_fixpoint(const TreeScheme& scheme);

/// Rank by structural recursion over the construction term: base trees have
/// rank 1 and a graft has the limsup of its argument ranks plus one. This is
/// the route that covers lazy (ordinal-program) trees.
Ordinal spr_symbolic(const ConstructionTerm& term);

}  // namespace sptree
