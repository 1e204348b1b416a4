#include "sptree/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "sptree/errors.hpp"
#include "sptree/sprank.hpp"

namespace sptree {

std::optional<BasicOpen> basis_intersection(const BasicOpen& a, const BasicOpen& b) {
  const Address& shorter = a.anchor.size() <= b.anchor.size() ? a.anchor : b.anchor;
  const Address& longer = a.anchor.size() <= b.anchor.size() ? b.anchor : a.anchor;
  if (!std::equal(shorter.begin(), shorter.end(), longer.begin()))
    return std::nullopt;  // incomparable anchors: no path contains both
  return BasicOpen{longer};
}

std::vector<BasicOpen> clopen_complement(const TreeScheme& scheme, const BasicOpen& a) {
  kind_at(scheme, a.anchor);  // validates the anchor
  int depth = static_cast<int>(a.anchor.size());
  UnfoldedTree tree = unfold(scheme, depth);
  std::vector<BasicOpen> out;
  for (const auto& node : tree.nodes)
    if (static_cast<int>(node.address.size()) == depth && node.address != a.anchor)
      out.push_back({node.address});
  return out;
}

namespace {

/// Kinds from which the continuation is forced: every reachable kind has a
/// single outgoing edge.
std::vector<char> deterministic_kinds(const TreeScheme& scheme) {
  auto reach = reachability_masks(scheme);
  int n = static_cast<int>(scheme.kinds.size());
  std::vector<char> single(n, 0), out(n, 0);
  for (int k = 0; k < n; ++k) single[k] = scheme.succ[k].size() == 1;
  for (int k = 0; k < n; ++k) {
    bool all = true;
    for (int j = 0; j < n && all; ++j)
      if (reach[k] & (std::uint64_t{1} << j)) all = single[j];
    out[k] = all;
  }
  return out;
}

/// Shortest address whose kind satisfies the predicate.
std::optional<Address> shortest_address(const TreeScheme& scheme,
                                        const std::vector<char>& want) {
  struct Item {
    int kind;
    Address address;
  };
  std::deque<Item> queue{{scheme.root, {}}};
  std::vector<char> seen(scheme.kinds.size(), 0);
  seen[scheme.root] = 1;
  while (!queue.empty()) {
    auto [kind, address] = queue.front();
    queue.pop_front();
    if (want[kind]) return address;
    for (std::size_t i = 0; i < scheme.succ[kind].size(); ++i) {
      int next = scheme.succ[kind][i].child;
      if (seen[next]) continue;
      seen[next] = 1;
      Address addr = address;
      addr.push_back(static_cast<int>(i));
      queue.push_back({next, std::move(addr)});
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<IsolatedTail> isolated_paths(const TreeScheme& scheme) {
  scheme.validate();
  auto tails = enumerate_cycle_tails(scheme, /*weight_one_only=*/false);
  auto det = deterministic_kinds(scheme);
  std::vector<IsolatedTail> out;
  for (const auto& tail : tails) {
    bool isolated = std::all_of(tail.cycle_kinds.begin(), tail.cycle_kinds.end(),
                                [&](int k) { return det[k]; });
    if (!isolated) continue;
    // A witness vertex: the deterministic region is forward closed, so any
    // vertex of a kind whose forced walk lands on this cycle works.
    std::vector<char> want(scheme.kinds.size(), 0);
    for (std::size_t k = 0; k < scheme.kinds.size(); ++k) {
      if (!det[k]) continue;
      int cur = static_cast<int>(k);
      std::set<int> visited;
      while (visited.insert(cur).second) cur = scheme.succ[cur][0].child;
      want[k] = std::find(tail.cycle_kinds.begin(), tail.cycle_kinds.end(), cur) !=
                tail.cycle_kinds.end();
    }
    auto witness = shortest_address(scheme, want);
    if (witness) out.push_back({tail, *witness});
  }
  return out;
}

bool DerivedAnnotation::tail_in_stage(std::size_t tail, int stage) const {
  if (stage < static_cast<int>(in_derived.size())) return in_derived[stage][tail] != 0;
  // Beyond the computed rows the sequence has either emptied or stabilized.
  return stabilized_nonempty && in_derived.back()[tail] != 0;
}

DerivedAnnotation cb_derivative(const TreeScheme& scheme, int stage_max) {
  scheme.validate();
  if (stage_max < 0) throw input_error("negative derivative stage");
  DerivedAnnotation out;
  out.tails = enumerate_cycle_tails(scheme, /*weight_one_only=*/false);
  int n = static_cast<int>(scheme.kinds.size());
  auto reach = reachability_masks(scheme);

  std::vector<std::uint64_t> cycle_mask(out.tails.size(), 0);
  for (std::size_t t = 0; t < out.tails.size(); ++t)
    for (int k : out.tails[t].cycle_kinds)
      cycle_mask[t] |= std::uint64_t{1} << k;

  std::vector<char> alive(out.tails.size(), 1);
  out.in_derived.push_back(alive);
  out.cb_height.assign(out.tails.size(), -1);

  for (int stage = 0; stage < stage_max; ++stage) {
    // Subspace of paths whose tail survives this stage. A kind is viable
    // when some surviving cycle is reachable from it; a surviving path only
    // crosses edges into viable kinds.
    std::uint64_t alive_kinds = 0;
    for (std::size_t t = 0; t < out.tails.size(); ++t)
      if (alive[t]) alive_kinds |= cycle_mask[t];
    std::vector<char> viable(n, 0);
    for (int k = 0; k < n; ++k) viable[k] = (reach[k] & alive_kinds) != 0;

    // Count, per viable kind, whether the subspace admits branching anywhere
    // ahead: some kind reachable through viable edges with two or more
    // viable out-edges. Otherwise the surviving continuation is unique and
    // the paths through that kind are isolated within the subspace.
    std::vector<char> branching(n, 0);
    for (int k = 0; k < n; ++k) {
      if (!viable[k]) continue;
      int viable_out = 0;
      for (const auto& e : scheme.succ[k])
        if (viable[e.child]) ++viable_out;
      branching[k] = viable_out >= 2;
    }
    std::vector<char> many(n, 0);
    for (int k = 0; k < n; ++k) {
      if (!viable[k]) continue;
      std::deque<int> queue{k};
      std::set<int> seen{k};
      bool found = branching[k];
      while (!queue.empty() && !found) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& e : scheme.succ[v]) {
          if (!viable[e.child] || seen.contains(e.child)) continue;
          seen.insert(e.child);
          if (branching[e.child]) {
            found = true;
            break;
          }
          queue.push_back(e.child);
        }
      }
      many[k] = found;
    }

    std::vector<char> next(out.tails.size(), 0);
    bool any = false, shrunk = false;
    for (std::size_t t = 0; t < out.tails.size(); ++t) {
      if (!alive[t]) continue;
      bool keep = std::all_of(out.tails[t].cycle_kinds.begin(),
                              out.tails[t].cycle_kinds.end(),
                              [&](int k) { return many[k]; });
      if (keep) {
        next[t] = 1;
        any = true;
      } else {
        out.cb_height[t] = stage + 1;
        shrunk = true;
      }
    }
    out.in_derived.push_back(next);
    alive = std::move(next);
    out.stages_computed = stage + 1;
    if (!any) break;
    if (!shrunk) {
      out.stabilized_nonempty = true;  // perfect core reached
      break;
    }
  }
  return out;
}

CritDerivedReport verify_crit_equals_derived(const TreeScheme& scheme, int stage_max) {
  CritAnalysis crit = analyze_crit(scheme);  // requires finite ramification
  DerivedAnnotation derived = cb_derivative(scheme, stage_max);

  CritDerivedReport report;
  for (int stage = 0; stage <= stage_max; ++stage) {
    CritDerivedReport::Stage s;
    s.stage = stage;
    for (std::size_t t = 0; t < crit.tails.size(); ++t)
      if (crit.tail_in_stage(t, stage)) s.crit_ids.push_back(crit.tails[t].id);
    for (std::size_t t = 0; t < derived.tails.size(); ++t)
      if (derived.tail_in_stage(t, stage)) s.derived_ids.push_back(derived.tails[t].id);
    std::sort(s.crit_ids.begin(), s.crit_ids.end());
    std::sort(s.derived_ids.begin(), s.derived_ids.end());
    s.equal = s.crit_ids == s.derived_ids;
    if (!s.equal) report.all_equal = false;
    report.stages.push_back(std::move(s));
  }
  return report;
}

CantorReport cantor_witnesses(const TreeScheme& scheme, int depth) {
  scheme.validate();
  CantorReport report;
  report.nonempty = !scheme.kinds.empty();

  std::set<int> level{scheme.root};
  bool min_two = true;
  std::int64_t max_branching = 0;
  for (int d = 0; d <= depth; ++d) {
    for (int k : level) {
      auto branches = static_cast<std::int64_t>(scheme.succ[k].size());
      max_branching = std::max(max_branching, branches);
      if (branches < 2) min_two = false;
    }
    std::set<int> next;
    for (int k : level)
      for (const auto& e : scheme.succ[k]) next.insert(e.child);
    level = std::move(next);
  }
  report.min_two_successors = min_two;
  report.finitely_branching = true;  // schemes have finite successor lists
  report.max_branching = max_branching;

  // Clopen witnesses: at each small depth the basic opens of that depth are
  // pairwise disjoint and cover everything, so each complement is open.
  bool clopen_ok = true;
  int probe = std::min(depth, 4);
  for (int d = 1; d <= probe && clopen_ok; ++d) {
    UnfoldedTree tree = unfold(scheme, d);
    std::vector<Address> at_depth;
    for (const auto& node : tree.nodes)
      if (static_cast<int>(node.address.size()) == d) at_depth.push_back(node.address);
    if (at_depth.empty()) {
      clopen_ok = false;
      break;
    }
    std::set<Address> distinct(at_depth.begin(), at_depth.end());
    if (distinct.size() != at_depth.size()) clopen_ok = false;
    BasicOpen first{at_depth.front()};
    auto complement = clopen_complement(scheme, first);
    if (complement.size() + 1 != at_depth.size()) clopen_ok = false;
    for (const auto& open : complement)
      if (basis_intersection(first, open).has_value()) clopen_ok = false;
  }
  report.clopen_basis_ok = clopen_ok;
  return report;
}

}  // namespace sptree
