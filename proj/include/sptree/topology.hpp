#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sptree/tree.hpp"

namespace sptree {

/// Basic open of the order topology on the maximal-path space: the set of
/// maximal paths through the anchor vertex.
struct BasicOpen {
  Address anchor;
  friend bool operator==(const BasicOpen&, const BasicOpen&) = default;
};

/// Two basic opens meet exactly when one anchor extends the other, and then
/// the intersection is the deeper one; incomparable anchors give the empty
/// set.
std::optional<BasicOpen> basis_intersection(const BasicOpen& a, const BasicOpen& b);

/// The complement of a basic open as the union of the basic opens anchored
/// at the other vertices of the same depth (the clopen witness; empty for
/// the root).
std::vector<BasicOpen> clopen_complement(const TreeScheme& scheme, const BasicOpen& a);

/// Tail classes consisting of isolated paths, each with a vertex witnessing
/// a unique maximal continuation.
struct IsolatedTail {
  TailDescriptor tail;
  Address witness;
};
std::vector<IsolatedTail> isolated_paths(const TreeScheme& scheme);

/// Iterated Cantor-Bendixson derivative computed at tail granularity:
/// stage 0 keeps every tail class, stage b+1 drops the classes isolated
/// within the subspace of paths whose tails survive stage b. The flags are
/// exact for eventually periodic paths: membership of a path depends only on
/// the kinds it visits infinitely often.
struct DerivedAnnotation {
  std::vector<TailDescriptor> tails;
  std::vector<std::vector<char>> in_derived;  // [stage][tail], stages 0..computed
  /// Least stage dropping the tail, or -1 when it survives forever (the
  /// perfect core).
  std::vector<int> cb_height;
  int stages_computed = 0;
  bool stabilized_nonempty = false;

  bool tail_in_stage(std::size_t tail, int stage) const;
};

DerivedAnnotation cb_derivative(const TreeScheme& scheme, int stage_max);

/// Per-stage comparison of the criticality fixpoint with the derived
/// sequence, at tail granularity. Requires a finitely ramified scheme (the
/// fixpoint side is undefined otherwise).
struct CritDerivedReport {
  struct Stage {
    int stage = 0;
    bool equal = true;
    std::vector<std::string> crit_ids;
    std::vector<std::string> derived_ids;
  };
  bool all_equal = true;
  std::vector<Stage> stages;
};
CritDerivedReport verify_crit_equals_derived(const TreeScheme& scheme, int stage_max);

/// Finitary structural witnesses for the Cantor-space characterization of
/// the path space: nonempty, at least two and finitely many successors
/// everywhere down to the requested depth, and clopen complements that
/// partition each level.
struct CantorReport {
  bool nonempty = false;
  bool min_two_successors = false;
  bool finitely_branching = false;
  bool clopen_basis_ok = false;
  std::int64_t max_branching = 0;

  bool all() const {
    return nonempty && min_two_successors && finitely_branching && clopen_basis_ok;
  }
};
CantorReport cantor_witnesses(const TreeScheme& scheme, int depth);

}  // namespace sptree
