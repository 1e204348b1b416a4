#include "sptree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>

#include "sptree/errors.hpp"

namespace sptree {

std::string address_str(const Address& a) {
  if (a.empty()) return "r";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(a[i]);
  }
  return out;
}

namespace {

std::vector<int> parse_int_list(std::string_view text, char sep) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    std::string_view tok = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
      throw input_error("invalid index '" + std::string(tok) + "'");
    out.push_back(value);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

Address parse_address(std::string_view text) {
  if (text == "r" || text.empty()) return {};
  return parse_int_list(text, '.');
}

std::string path_str(const PathDescriptor& p) {
  std::string out;
  if (!p.anchor.empty()) {
    out += '@';
    out += address_str(p.anchor);
    out += ':';
  }
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(p.prefix[i]);
  }
  if (p.infinite()) {
    out += '~';
    for (std::size_t i = 0; i < p.cycle.size(); ++i) {
      if (i > 0) out += '.';
      out += std::to_string(p.cycle[i]);
    }
  }
  return out;
}

PathDescriptor parse_path(std::string_view text) {
  PathDescriptor p;
  if (text.starts_with('@')) {
    std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
      throw input_error("path anchor missing ':' separator");
    p.anchor = parse_address(text.substr(1, colon - 1));
    text = text.substr(colon + 1);
  }
  std::size_t tilde = text.find('~');
  std::string_view prefix = text.substr(0, tilde);
  if (!prefix.empty()) p.prefix = parse_int_list(prefix, '.');
  if (tilde != std::string_view::npos) {
    std::string_view cycle = text.substr(tilde + 1);
    if (cycle.empty()) throw input_error("path cycle is empty: '" + std::string(text) + "'");
    p.cycle = parse_int_list(cycle, '.');
  }
  return p;
}

int TreeScheme::kind_index(std::string_view name) const {
  for (std::size_t i = 0; i < kinds.size(); ++i)
    if (kinds[i] == name) return static_cast<int>(i);
  return -1;
}

void TreeScheme::validate() const {
  if (kinds.empty()) throw input_error("scheme has no kinds");
  if (kinds.size() != succ.size())
    throw input_error("scheme successor table does not match kind list");
  if (root < 0 || root >= static_cast<int>(kinds.size()))
    throw input_error("scheme root out of range");
  std::set<std::string> seen;
  for (const auto& k : kinds)
    if (!seen.insert(k).second) throw input_error("duplicate kind name '" + k + "'");
  for (std::size_t i = 0; i < succ.size(); ++i) {
    if (succ[i].empty())
      throw input_error("kind '" + kinds[i] + "' has no successors");
    for (const auto& e : succ[i]) {
      if (e.child < 0 || e.child >= static_cast<int>(kinds.size()))
        throw input_error("edge from '" + kinds[i] + "' to unknown kind");
      if (e.weight < 1)
        throw input_error("edge from '" + kinds[i] + "' has weight < 1");
    }
  }
  // Every kind reachable from the root.
  std::vector<char> reached(kinds.size(), 0);
  std::deque<int> queue{root};
  reached[root] = 1;
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (const auto& e : succ[k])
      if (!reached[e.child]) {
        reached[e.child] = 1;
        queue.push_back(e.child);
      }
  }
  for (std::size_t i = 0; i < kinds.size(); ++i)
    if (!reached[i]) throw input_error("kind '" + kinds[i] + "' unreachable from root");
}

UnfoldedTree unfold(const TreeScheme& scheme, int depth) {
  scheme.validate();
  if (depth < 0) throw input_error("negative unfold depth");
  UnfoldedTree tree;
  struct Item {
    int node;
    int kind;
    int depth;
  };
  tree.nodes.push_back({-1, 0, scheme.kinds[scheme.root], {}});
  tree.children.emplace_back();
  std::deque<Item> queue{{0, scheme.root, 0}};
  while (!queue.empty()) {
    auto [node, kind, d] = queue.front();
    queue.pop_front();
    if (d == depth) continue;
    const auto& edges = scheme.succ[kind];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Address addr = tree.nodes[node].address;
      addr.push_back(static_cast<int>(i));
      int id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(
          {node, edges[i].weight, scheme.kinds[edges[i].child], std::move(addr)});
      tree.children.emplace_back();
      tree.children[node].push_back(id);
      queue.push_back({id, edges[i].child, d + 1});
    }
  }
  return tree;
}

std::int64_t node_weight(const TreeScheme& scheme, int kind) {
  if (kind < 0 || kind >= static_cast<int>(scheme.kinds.size()))
    throw input_error("unknown kind index");
  std::int64_t total = 0;
  for (const auto& e : scheme.succ[kind]) total += e.weight;
  return total;
}

WeightClass check_weight_class(const TreeScheme& scheme, int certificate_horizon) {
  scheme.validate();
  WeightClass result;

  std::set<std::int64_t> all_weights;
  for (std::size_t k = 0; k < scheme.kinds.size(); ++k)
    all_weights.insert(node_weight(scheme, static_cast<int>(k)));

  // Level sets of kinds are eventually periodic; walking them until a repeat
  // decides balancedness exactly.
  std::set<int> level{scheme.root};
  std::map<std::set<int>, int> seen;
  bool balanced = true;
  std::vector<std::set<int>> visited_levels;
  while (!seen.contains(level)) {
    seen[level] = static_cast<int>(visited_levels.size());
    visited_levels.push_back(level);
    std::set<std::int64_t> weights;
    for (int k : level) weights.insert(node_weight(scheme, k));
    if (weights.size() > 1) balanced = false;
    std::set<int> next;
    for (int k : level)
      for (const auto& e : scheme.succ[k]) next.insert(e.child);
    level = std::move(next);
  }

  if (all_weights.size() == 1) {
    result.label = WeightClassLabel::TotallyBalanced;
    result.common_weight = *all_weights.begin();
  } else if (balanced) {
    result.label = WeightClassLabel::Balanced;
  } else {
    result.label = WeightClassLabel::LocallyBounded;  // finite schemes always are
  }

  std::set<int> lvl{scheme.root};
  for (int d = 0; d <= certificate_horizon; ++d) {
    std::set<std::int64_t> weights;
    for (int k : lvl) weights.insert(node_weight(scheme, k));
    result.level_weights.emplace_back(weights.begin(), weights.end());
    std::set<int> next;
    for (int k : lvl)
      for (const auto& e : scheme.succ[k]) next.insert(e.child);
    lvl = std::move(next);
  }
  return result;
}

namespace {

/// Tarjan strongly connected components; returns component id per kind.
std::vector<int> scc_ids(const TreeScheme& scheme) {
  int n = static_cast<int>(scheme.kinds.size());
  std::vector<int> ids(n, -1), low(n, 0), num(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, comp = 0;

  struct Frame {
    int kind;
    std::size_t edge;
  };
  for (int start = 0; start < n; ++start) {
    if (num[start] != -1) continue;
    std::vector<Frame> frames{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      auto& [kind, edge] = frames.back();
      if (edge < scheme.succ[kind].size()) {
        int next = scheme.succ[kind][edge++].child;
        if (num[next] == -1) {
          num[next] = low[next] = counter++;
          stack.push_back(next);
          on_stack[next] = 1;
          frames.push_back({next, 0});
        } else if (on_stack[next]) {
          low[kind] = std::min(low[kind], num[next]);
        }
      } else {
        if (low[kind] == num[kind]) {
          int k;
          do {
            k = stack.back();
            stack.pop_back();
            on_stack[k] = 0;
            ids[k] = comp;
          } while (k != kind);
          ++comp;
        }
        int done = kind;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().kind] = std::min(low[frames.back().kind], low[done]);
      }
    }
  }
  return ids;
}

/// Shortest edge-step route from `from` to any kind satisfying `target`,
/// through kinds allowed by `edge_ok`. Returns kind-steps pairs? Just steps.
std::optional<std::vector<int>> bfs_route(
    const TreeScheme& scheme, int from,
    const std::vector<char>& target,
    const std::vector<std::vector<char>>& edge_ok) {
  int n = static_cast<int>(scheme.kinds.size());
  std::vector<int> prev_kind(n, -1), prev_step(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  if (target[from]) return std::vector<int>{};
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < scheme.succ[k].size(); ++i) {
      if (!edge_ok.empty() && !edge_ok[k][i]) continue;
      int next = scheme.succ[k][i].child;
      if (seen[next]) continue;
      seen[next] = 1;
      prev_kind[next] = k;
      prev_step[next] = static_cast<int>(i);
      if (target[next]) {
        std::vector<int> steps;
        for (int cur = next; cur != from; cur = prev_kind[cur])
          steps.push_back(prev_step[cur]);
        std::reverse(steps.begin(), steps.end());
        return steps;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace

RamificationCheck check_finite_ramification(const TreeScheme& scheme) {
  scheme.validate();
  std::vector<int> scc = scc_ids(scheme);
  for (std::size_t k = 0; k < scheme.succ.size(); ++k) {
    for (std::size_t i = 0; i < scheme.succ[k].size(); ++i) {
      const auto& e = scheme.succ[k][i];
      if (e.weight >= 2 && scc[k] == scc[e.child]) {
        // The edge lies on a cycle: route root -> k, then the cycle
        // k -> child -> ... -> k has infinite weight.
        std::vector<char> is_k(scheme.kinds.size(), 0);
        is_k[k] = 1;
        auto to_k = bfs_route(scheme, scheme.root, is_k, {});
        auto back = bfs_route(scheme, e.child, is_k, {});
        PathDescriptor witness;
        witness.prefix = to_k.value_or(std::vector<int>{});
        witness.cycle.push_back(static_cast<int>(i));
        if (back) witness.cycle.insert(witness.cycle.end(), back->begin(), back->end());
        return {false, witness};
      }
    }
  }
  return {true, std::nullopt};
}

bool all_paths_finitely_ramified(const TreeScheme& scheme) {
  return check_finite_ramification(scheme).finitely_ramified;
}

void validate_path(const TreeScheme& scheme, const PathDescriptor& path) {
  int kind = kind_at(scheme, path.anchor);
  for (int step : path.prefix) {
    if (step < 0 || step >= static_cast<int>(scheme.succ[kind].size()))
      throw input_error("path step out of range at kind '" + scheme.kinds[kind] + "'");
    kind = scheme.succ[kind][step].child;
  }
  if (path.infinite()) {
    int start = kind;
    for (int step : path.cycle) {
      if (step < 0 || step >= static_cast<int>(scheme.succ[kind].size()))
        throw input_error("path cycle step out of range at kind '" +
                          scheme.kinds[kind] + "'");
      kind = scheme.succ[kind][step].child;
    }
    if (kind != start)
      throw input_error("path cycle does not return to its starting kind");
  }
}

int kind_at(const TreeScheme& scheme, const Address& address) {
  int kind = scheme.root;
  for (int step : address) {
    if (step < 0 || step >= static_cast<int>(scheme.succ[kind].size()))
      throw input_error("address step out of range at kind '" + scheme.kinds[kind] + "'");
    kind = scheme.succ[kind][step].child;
  }
  return kind;
}

int path_end_kind(const TreeScheme& scheme, const PathDescriptor& path) {
  int kind = kind_at(scheme, path.anchor);
  for (int step : path.prefix) kind = scheme.succ[kind][step].child;
  return kind;
}

std::vector<int> expand_steps(const PathDescriptor& path, std::size_t count) {
  std::vector<int> steps;
  steps.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < path.prefix.size()) {
      steps.push_back(path.prefix[i]);
    } else {
      if (path.cycle.empty()) break;  // finite path exhausted
      steps.push_back(path.cycle[(i - path.prefix.size()) % path.cycle.size()]);
    }
  }
  return steps;
}

PathWeight path_weight(const TreeScheme& scheme, const PathDescriptor& path) {
  validate_path(scheme, path);
  int kind = kind_at(scheme, path.anchor);
  std::int64_t product = 1;
  for (int step : path.prefix) {
    product *= scheme.succ[kind][step].weight;
    if (product > (std::int64_t{1} << 50)) throw bound_error("path weight overflow");
    kind = scheme.succ[kind][step].child;
  }
  for (int step : path.cycle) {
    if (scheme.succ[kind][step].weight >= 2) return PathWeight::infinity();
    kind = scheme.succ[kind][step].child;
  }
  return {true, product};
}

PathDescriptor unramified_tail(const TreeScheme& scheme, const PathDescriptor& path) {
  validate_path(scheme, path);
  if (!path.infinite()) throw input_error("unramified tail requires an infinite path");
  if (!path_weight(scheme, path).finite)
    throw input_error("path is infinitely ramified");
  // The cycle is all weight-1 here, so any weight >= 2 edge sits in the prefix.
  int kind = kind_at(scheme, path.anchor);
  std::size_t cut = 0;
  for (std::size_t i = 0; i < path.prefix.size(); ++i) {
    if (scheme.succ[kind][path.prefix[i]].weight >= 2) cut = i + 1;
    kind = scheme.succ[kind][path.prefix[i]].child;
  }
  PathDescriptor tail;
  tail.anchor = path.anchor;
  tail.anchor.insert(tail.anchor.end(), path.prefix.begin(), path.prefix.begin() + cut);
  tail.prefix.assign(path.prefix.begin() + cut, path.prefix.end());
  tail.cycle = path.cycle;
  return tail;
}

namespace {

constexpr std::size_t kMaxTailClasses = 10000;

/// Deduplicated kind-level adjacency, optionally through weight-1 edges only.
std::vector<std::vector<int>> kind_adjacency(const TreeScheme& scheme,
                                             bool weight_one_only) {
  std::vector<std::vector<int>> adj(scheme.kinds.size());
  for (std::size_t k = 0; k < scheme.succ.size(); ++k) {
    std::set<int> targets;
    for (const auto& e : scheme.succ[k])
      if (!weight_one_only || e.weight == 1) targets.insert(e.child);
    adj[k].assign(targets.begin(), targets.end());
  }
  return adj;
}

}  // namespace

std::vector<TailDescriptor> enumerate_cycle_tails(const TreeScheme& scheme,
                                                  bool weight_one_only) {
  scheme.validate();
  if (scheme.kinds.size() > 64) throw bound_error("scheme has more than 64 kinds");
  auto adj = kind_adjacency(scheme, weight_one_only);
  int n = static_cast<int>(scheme.kinds.size());

  // Simple cycle enumeration: for each start vertex s, DFS through vertices
  // >= s only; a cycle is recorded when an edge returns to s. Each simple
  // cycle is found once, rotated to start at its smallest vertex.
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  auto dfs = [&](auto&& self, int start, int v) -> void {
    path.push_back(v);
    on_path[v] = 1;
    for (int next : adj[v]) {
      if (next == start) {
        cycles.push_back(path);
        if (cycles.size() > kMaxTailClasses)
          throw bound_error("too many tail classes");
      } else if (next > start && !on_path[next]) {
        self(self, start, next);
      }
    }
    on_path[v] = 0;
    path.pop_back();
  };
  for (int s = 0; s < n; ++s) dfs(dfs, s, s);

  auto reach = reachability_masks(scheme);
  std::vector<TailDescriptor> tails;
  for (auto& cyc : cycles) {
    TailDescriptor t;
    t.cycle_kinds = std::move(cyc);
    std::uint64_t cyc_mask = 0;
    for (int k : t.cycle_kinds) cyc_mask |= std::uint64_t{1} << k;
    for (int k = 0; k < n; ++k)
      if (reach[k] & cyc_mask) t.basin_kinds.push_back(k);
    for (std::size_t i = 0; i < t.cycle_kinds.size(); ++i) {
      if (i > 0) t.id += '>';
      t.id += scheme.kinds[t.cycle_kinds[i]];
    }
    tails.push_back(std::move(t));
  }
  std::sort(tails.begin(), tails.end(),
            [](const TailDescriptor& a, const TailDescriptor& b) { return a.id < b.id; });
  return tails;
}

std::vector<TailDescriptor> enumerate_tail_kinds(const TreeScheme& scheme) {
  auto check = check_finite_ramification(scheme);
  if (!check.finitely_ramified)
    throw input_error("scheme has infinitely ramified paths");
  return enumerate_cycle_tails(scheme, /*weight_one_only=*/true);
}

std::vector<std::uint64_t> reachability_masks(const TreeScheme& scheme) {
  if (scheme.kinds.size() > 64) throw bound_error("scheme has more than 64 kinds");
  int n = static_cast<int>(scheme.kinds.size());
  std::vector<std::uint64_t> reach(n, 0);
  for (int k = 0; k < n; ++k) {
    std::uint64_t mask = std::uint64_t{1} << k;
    std::deque<int> queue{k};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& e : scheme.succ[v]) {
        std::uint64_t bit = std::uint64_t{1} << e.child;
        if (!(mask & bit)) {
          mask |= bit;
          queue.push_back(e.child);
        }
      }
    }
    reach[k] = mask;
  }
  return reach;
}

std::vector<int> infinitely_visited_kinds(const TreeScheme& scheme,
                                          const PathDescriptor& path) {
  validate_path(scheme, path);
  if (!path.infinite()) throw input_error("finite path has no tail kinds");
  int kind = path_end_kind(scheme, path);
  std::set<int> kinds{kind};
  for (int step : path.cycle) {
    kind = scheme.succ[kind][step].child;
    kinds.insert(kind);
  }
  return {kinds.begin(), kinds.end()};
}

PathDescriptor representative_path(const TreeScheme& scheme, const TailDescriptor& tail) {
  std::vector<char> on_cycle(scheme.kinds.size(), 0);
  for (int k : tail.cycle_kinds) on_cycle[k] = 1;
  auto prefix = bfs_route(scheme, scheme.root, on_cycle, {});
  if (!prefix) throw input_error("tail cycle not reachable from root");

  PathDescriptor path;
  path.prefix = *prefix;
  int entry = path_end_kind(scheme, path);
  // Rotate the cycle to start at the entry kind, then realize each
  // kind-adjacency by the first matching weight-1 edge (falling back to any
  // edge for cycles that use heavier ones).
  std::vector<int> cyc = tail.cycle_kinds;
  auto it = std::find(cyc.begin(), cyc.end(), entry);
  if (it == cyc.end()) throw input_error("entry kind not on tail cycle");
  std::rotate(cyc.begin(), it, cyc.end());
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int from = cyc[i];
    int to = cyc[(i + 1) % cyc.size()];
    int step = -1;
    for (std::size_t j = 0; j < scheme.succ[from].size(); ++j) {
      const auto& e = scheme.succ[from][j];
      if (e.child == to && e.weight == 1) {
        step = static_cast<int>(j);
        break;
      }
    }
    if (step < 0)
      for (std::size_t j = 0; j < scheme.succ[from].size(); ++j)
        if (scheme.succ[from][j].child == to) {
          step = static_cast<int>(j);
          break;
        }
    if (step < 0) throw input_error("tail cycle edge missing in scheme");
    path.cycle.push_back(step);
  }
  validate_path(scheme, path);
  return path;
}

std::string canonical_form(const UnfoldedTree& tree, int node) {
  std::vector<std::string> parts;
  for (int child : tree.children[node])
    parts.push_back(std::to_string(tree.nodes[child].weight) + ':' +
                    canonical_form(tree, child));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ',';
    out += parts[i];
  }
  out += ')';
  return out;
}

bool weighted_tree_isomorphic(const UnfoldedTree& a, const UnfoldedTree& b) {
  if (a.size() != b.size()) return false;
  if (a.nodes.empty()) return true;
  return canonical_form(a) == canonical_form(b);
}

UnfoldedTree subtree_at(const UnfoldedTree& tree, int node) {
  UnfoldedTree out;
  struct Item {
    int old_id;
    int new_parent;
  };
  std::deque<Item> queue{{node, -1}};
  while (!queue.empty()) {
    auto [old_id, new_parent] = queue.front();
    queue.pop_front();
    int id = static_cast<int>(out.nodes.size());
    UnfoldedTree::Node n = tree.nodes[old_id];
    n.parent = new_parent;
    if (new_parent < 0) n.weight = 0;
    out.nodes.push_back(std::move(n));
    out.children.emplace_back();
    if (new_parent >= 0) out.children[new_parent].push_back(id);
    for (int child : tree.children[old_id]) queue.push_back({child, id});
  }
  return out;
}

}  // namespace sptree
