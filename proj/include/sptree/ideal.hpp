#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptree/sprank.hpp"
#include "sptree/tree.hpp"

namespace sptree {

/// Finitely generated ideal given as a product of vertex ideals at a common
/// level: each factor is the extension of the maximal ideal attached to a
/// vertex of the unfolded tree, raised to a positive power.
struct IdealExpr {
  struct Factor {
    Address vertex;
    std::int64_t exponent = 1;
  };
  std::vector<Factor> factors;

  std::size_t level() const;  // common factor level
  void validate(const TreeScheme& scheme) const;
  std::string str() const;                       // "r^1" or "0.2^1*1.0^2"
  static IdealExpr parse(std::string_view text);
};

/// Maximal ideals are maximal paths: root-anchored infinite descriptors.
using MaxIdealRef = PathDescriptor;

/// Value of the ideal function at M: a factor on the path contributes its
/// exponent times the weight of the subpath starting at its vertex, factors
/// off the path contribute nothing. Requires M finitely ramified.
std::int64_t nu(const TreeScheme& scheme, const IdealExpr& ideal, const MaxIdealRef& M);

/// True when the ideal function never reaches 2, i.e. its supremum over all
/// maximal paths is at most 1. The supremum is finite to compute: per-kind
/// maxima of subtree path weights bound every continuation.
bool is_radical(const TreeScheme& scheme, const IdealExpr& ideal);

/// Largest weight of an infinite finitely ramified path from each kind
/// (always finite on finitely ramified schemes).
std::vector<std::int64_t> max_subtree_weight(const TreeScheme& scheme);

/// Criticality of the maximal ideal M: every vertex along the unramified
/// tail of its path sees an infinite path of weight > 1. Agrees with
/// stage-1 membership of the tail in the criticality fixpoint.
bool is_critical(const TreeScheme& scheme, const MaxIdealRef& M);

/// Ring-side stage membership; equals the tail's fixpoint membership by
/// construction (stage 0 holds for every maximal ideal).
bool crit_alpha_membership(const TreeScheme& scheme, const MaxIdealRef& M, int alpha);

/// Witness for stage membership at the given vertex of M's path: another
/// maximal ideal through that vertex whose ideal value there is >= 2 and
/// whose tail survives stage alpha-1. Returns nothing when no witness
/// exists (which refutes membership when the vertex lies on the tail).
struct CritWitness {
  Address vertex;
  MaxIdealRef witness;
  std::int64_t nu_value = 0;
};
std::optional<CritWitness> criticality_witness(const TreeScheme& scheme,
                                               const MaxIdealRef& M, int alpha,
                                               std::size_t vertex_level);

/// For a non-critical M: a finitely generated radical vertex ideal contained
/// in M, found within one prefix-plus-cycle round of the path.
IdealExpr radical_ideal_in(const TreeScheme& scheme, const MaxIdealRef& M);

}  // namespace sptree
