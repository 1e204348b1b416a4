#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sptree/ordinal.hpp"
#include "sptree/tree.hpp"

namespace sptree {

/// Base-tree family: all edges weight 1; balanced variants give every vertex
/// n direct successors, the countable variant is a single infinite chain.
struct FamilyVariant {
  enum class Tag { Balanced3, Countable, BalancedN };
  Tag tag = Tag::Balanced3;
  int n = 3;  // BalancedN only; must be >= 3

  /// Weight of the edge from a spine vertex into its branch subtree.
  int branch_weight() const { return tag == Tag::BalancedN ? n - 1 : 2; }
  TreeScheme base_scheme() const;
  std::string str() const;
  static FamilyVariant parse(std::string_view text);
  friend bool operator==(const FamilyVariant&, const FamilyVariant&) = default;
};

/// Construction term for a tree: either a family base tree, or a spine graft
/// over a sequence of argument trees. The argument sequence is given either
/// as a finite list repeated forever (periodic) or as an ordinal program: the
/// n-th argument is the family tree of rank fundamental_seq(limit, n-1) + 1.
struct ConstructionTerm {
  enum class Op { Base, Graft };
  Op op = Op::Base;
  FamilyVariant variant;                   // Base, and Graft-program family
  int branch_weight = 2;                   // Graft
  std::vector<ConstructionTerm> periodic;  // Graft with periodic arguments
  std::optional<Ordinal> program_limit;    // Graft with ordinal-program arguments

  bool periodic_args() const { return op == Op::Graft && !program_limit; }
};

/// Finite presentation of a spine graft over periodic arguments: spine kinds
/// x0..x{p-1} with weight-1 spine edges, plus the (renamed) argument kinds;
/// each spine kind branches into the root of one argument with weight
/// `branch_weight`.
struct GraftScheme {
  TreeScheme scheme;
  int period = 1;
  int branch_weight = 2;
  std::vector<TreeScheme> args;  // the original argument schemes
};

/// Grafts the periodic argument sequence onto an infinite spine. Isomorphic
/// spine positions collapse to one kind per period slot, so the result is a
/// finite scheme whenever the arguments are.
GraftScheme spine_graft(const std::vector<TreeScheme>& periodic_args,
                        int branch_weight = 2);

/// A constructed tree: the term always evaluates lazily through node();
/// `finite` additionally holds the scheme presentation when one exists.
class BuiltTree {
 public:
  struct NodeInfo {
    std::string label;
    std::vector<std::int64_t> edge_weights;
  };

  BuiltTree(ConstructionTerm term, std::optional<TreeScheme> scheme,
            std::optional<GraftScheme> graft);

  const ConstructionTerm& term() const { return term_; }
  bool lazy() const { return !scheme_.has_value(); }
  bool is_graft() const { return graft_.has_value(); }
  const TreeScheme& scheme() const;  // throws input_error when lazy
  const GraftScheme& graft() const;  // throws input_error for base trees

  /// Children weights and label of the vertex at `address` in the presented
  /// tree; total on all reachable addresses, deterministic and pure.
  NodeInfo node(const Address& address) const;
  /// Depth truncation computed through node(); works for lazy trees.
  UnfoldedTree unfold_lazy(int depth) const;

 private:
  ConstructionTerm term_;
  std::optional<TreeScheme> scheme_;
  std::optional<GraftScheme> graft_;
  // Argument trees of ordinal programs are built on demand, keyed by index.
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<std::string, std::uint64_t>, std::shared_ptr<BuiltTree>> trees;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

  NodeInfo interpret(const ConstructionTerm& term, const Address& address,
                     std::size_t offset, const std::string& label_prefix) const;
  std::shared_ptr<BuiltTree> program_arg(const ConstructionTerm& term,
                                         std::uint64_t index) const;
};

/// Family tree of the given rank: rank 1 is the variant's base tree; rank
/// b+1 grafts copies of the rank-b tree (periodically for successor b, via
/// the canonical fundamental sequence for limit b). Limit ranks themselves
/// are not constructible here and raise input_error.
BuiltTree build_rank_tree(const Ordinal& alpha, FamilyVariant variant);

/// Lifts a maximal path of the i-th argument (1-based) to the grafted tree:
/// i-1 spine steps, the branch edge, then the inner path. Its weight is
/// branch_weight times the inner weight.
PathDescriptor embed_path(const GraftScheme& graft, int arg_index,
                          const PathDescriptor& inner);

}  // namespace sptree
