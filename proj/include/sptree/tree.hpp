#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sptree {

/// Vertex of the unfolded tree, named by the child-index path from the root.
/// The root is the empty address; textual form is "r" or "0.2.1".
using Address = std::vector<int>;

std::string address_str(const Address& a);
Address parse_address(std::string_view text);

struct SchemeEdge {
  int child = 0;               // kind index
  std::int64_t weight = 1;     // >= 1
  friend bool operator==(const SchemeEdge&, const SchemeEdge&) = default;
};

/// Finite self-similar presentation of a weighted omega-tree: a kind graph
/// with ordered, non-empty successor lists and positive edge weights. Every
/// kind is reachable from the root; the presented tree has no maximal
/// elements and every vertex has finite height.
struct TreeScheme {
  std::vector<std::string> kinds;
  int root = 0;
  std::vector<std::vector<SchemeEdge>> succ;  // one list per kind
  std::string meta;                           // optional JSON metadata blob

  int kind_index(std::string_view name) const;  // -1 when absent
  void validate() const;                        // throws input_error
  friend bool operator==(const TreeScheme&, const TreeScheme&) = default;
};

/// A path in the presented tree: starts at `anchor` (root when empty),
/// follows `prefix` child-index steps, then repeats `cycle` forever. An empty
/// cycle denotes a finite path. For an infinite descriptor the cycle returns
/// to the kind it started from, so the path is eventually periodic at the
/// kind level.
struct PathDescriptor {
  Address anchor;
  std::vector<int> prefix;
  std::vector<int> cycle;

  bool infinite() const { return !cycle.empty(); }
  friend bool operator==(const PathDescriptor&, const PathDescriptor&) = default;
};

std::string path_str(const PathDescriptor& p);
PathDescriptor parse_path(std::string_view text);

/// Explicit finite weighted tree (a depth truncation of a presented tree, or
/// the vertex set of a valuation chain). Node 0 is the root.
struct UnfoldedTree {
  struct Node {
    int parent = -1;
    std::int64_t weight = 0;  // edge weight from parent; 0 for the root
    std::string label;
    Address address;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> children;

  std::size_t size() const { return nodes.size(); }
};

/// Depth truncation of the tree presented by `scheme`; node count equals the
/// number of addresses of length <= depth.
UnfoldedTree unfold(const TreeScheme& scheme, int depth);

/// Outbound weight of a kind: the sum of the weights of its edges.
std::int64_t node_weight(const TreeScheme& scheme, int kind);

enum class WeightClassLabel { TotallyBalanced, Balanced, LocallyBounded };

struct WeightClass {
  WeightClassLabel label = WeightClassLabel::LocallyBounded;
  std::int64_t common_weight = 0;  // set for TotallyBalanced
  /// Distinct outbound weights of the kinds reachable at each depth, reported
  /// up to the requested horizon (certificates; the classification itself is
  /// exact, via cycle detection on the level sets).
  std::vector<std::vector<std::int64_t>> level_weights;
};

WeightClass check_weight_class(const TreeScheme& scheme, int certificate_horizon = 8);

struct RamificationCheck {
  bool finitely_ramified = true;
  /// When false: a maximal path of infinite weight (its cycle crosses an
  /// edge of weight >= 2).
  std::optional<PathDescriptor> witness;
};

/// Every maximal path of a finite scheme is finitely ramified exactly when
/// every cycle of the kind graph uses only weight-1 edges.
RamificationCheck check_finite_ramification(const TreeScheme& scheme);
bool all_paths_finitely_ramified(const TreeScheme& scheme);

struct PathWeight {
  bool finite = true;
  std::int64_t value = 1;

  static PathWeight infinity() { return {false, 0}; }
  friend bool operator==(const PathWeight&, const PathWeight&) = default;
};

/// Product of the edge weights along the path; infinite exactly when the
/// cycle contains an edge of weight >= 2.
PathWeight path_weight(const TreeScheme& scheme, const PathDescriptor& path);

/// Largest infinite all-weight-1 suffix of a finitely ramified infinite
/// path, anchored immediately after the last edge of weight >= 2.
PathDescriptor unramified_tail(const TreeScheme& scheme, const PathDescriptor& path);

/// Eventual-cycle class of maximal paths: a simple cycle of the kind graph
/// together with the kinds that can reach it.
struct TailDescriptor {
  std::vector<int> cycle_kinds;  // canonical rotation (smallest kind index first)
  std::vector<int> basin_kinds;  // kinds from which the cycle is reachable
  std::string id;                // kind names joined by '>'
};

/// Simple weight-1 cycles of the kind graph. Requires a finitely ramified
/// scheme; every maximal path's unramified tail eventually runs along the
/// kinds of exactly one listed cycle structure.
std::vector<TailDescriptor> enumerate_tail_kinds(const TreeScheme& scheme);

/// Simple cycles through edges of any weight (the carrier for topology on
/// schemes that may not be finitely ramified). Coincides with
/// enumerate_tail_kinds on finitely ramified schemes.
std::vector<TailDescriptor> enumerate_cycle_tails(const TreeScheme& scheme,
                                                  bool weight_one_only);

// -- path utilities -----------------------------------------------------

void validate_path(const TreeScheme& scheme, const PathDescriptor& path);
/// Kind of the vertex at `address`.
int kind_at(const TreeScheme& scheme, const Address& address);
/// Kind at the end of the prefix (where the cycle starts).
int path_end_kind(const TreeScheme& scheme, const PathDescriptor& path);
/// First `count` steps of the path's step stream (prefix then cycle repeats).
std::vector<int> expand_steps(const PathDescriptor& path, std::size_t count);
/// Set of kinds visited infinitely often (the kinds of one full cycle round).
std::vector<int> infinitely_visited_kinds(const TreeScheme& scheme,
                                          const PathDescriptor& path);
/// A root-anchored maximal path whose tail is the given descriptor.
PathDescriptor representative_path(const TreeScheme& scheme, const TailDescriptor& tail);

/// Kind-level reachability (reflexive), one bitmask per kind. Schemes are
/// capped at 64 kinds for the analyses built on these masks.
std::vector<std::uint64_t> reachability_masks(const TreeScheme& scheme);

/// Weighted (label-blind) tree isomorphism via canonical forms.
bool weighted_tree_isomorphic(const UnfoldedTree& a, const UnfoldedTree& b);
std::string canonical_form(const UnfoldedTree& tree, int node = 0);

/// Subtree rooted at `node`, re-rooted as its own UnfoldedTree.
UnfoldedTree subtree_at(const UnfoldedTree& tree, int node);

}  // namespace sptree
