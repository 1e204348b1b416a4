#include "sptree/valuation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sptree/errors.hpp"

namespace sptree {

std::string ValuationChain::node_id(int node) const {
  const ChainNode& n = nodes[node];
  std::string id = root_tags[n.root];
  if (!n.address.empty()) {
    id += ':';
    id += address_str(n.address);
  }
  return id;
}

StepReport validate_step(const ValuationChain& chain, int step_index) {
  StepReport report;
  const ExtensionStep& step = chain.steps[step_index];
  for (const auto& [node, ef] : step.prescriptions) {
    if (ef.empty()) {
      report.ok = false;
      report.failures.emplace_back(chain.node_id(node), "empty prescription");
      continue;
    }
    std::int64_t total = 0;
    for (const auto& [e, f] : ef) {
      if (e < 1 || f < 1) {
        report.ok = false;
        report.failures.emplace_back(chain.node_id(node), "non-positive e or f");
      }
      total += e * f;
    }
    if (total != step.degree) {
      report.ok = false;
      report.failures.emplace_back(
          chain.node_id(node), "sum e*f = " + std::to_string(total) +
                                   " != degree " + std::to_string(step.degree));
    }
  }
  return report;
}

ChainReport validate_chain(const ValuationChain& chain) {
  ChainReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.structural_failures.push_back(std::move(msg));
  };

  if (chain.root_tags.empty()) fail("chain has no roots");
  if (chain.level_index.size() != chain.steps.size() + 1)
    fail("level index does not match step count");

  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    const ChainNode& n = chain.nodes[i];
    if (n.level == 0) {
      if (n.parent != -1 || n.e_acc != 1 || n.f_acc != 1)
        fail("root node " + chain.node_id(static_cast<int>(i)) + " malformed");
    } else {
      const ChainNode& p = chain.nodes[n.parent];
      if (p.level != n.level - 1)
        fail("edge skips a level at " + chain.node_id(static_cast<int>(i)));
      if (n.e_acc != p.e_acc * n.e_step || n.f_acc != p.f_acc * n.f_step)
        fail("accumulated degrees not multiplicative at " +
             chain.node_id(static_cast<int>(i)));
    }
  }

  for (std::size_t s = 0; s < chain.steps.size(); ++s) {
    // Prescriptions must cover exactly the nodes of level s.
    std::set<int> prescribed;
    for (const auto& [node, ef] : chain.steps[s].prescriptions) {
      if (chain.nodes[node].level != static_cast<int>(s))
        fail("prescription at step " + std::to_string(s + 1) + " references level " +
             std::to_string(chain.nodes[node].level));
      if (!prescribed.insert(node).second)
        fail("duplicate prescription at step " + std::to_string(s + 1));
    }
    for (int node : chain.level_index[s])
      if (!prescribed.contains(node))
        fail("node " + chain.node_id(node) + " missing a prescription");
    report.steps.push_back(validate_step(chain, static_cast<int>(s)));
    if (!report.steps.back().ok) report.ok = false;
  }
  return report;
}

namespace {

/// Kinds present at each level of the unfolding (the level sets, extended to
/// the requested depth).
std::vector<std::set<int>> level_kind_sets(const TreeScheme& scheme, int depth) {
  std::vector<std::set<int>> levels;
  std::set<int> level{scheme.root};
  for (int d = 0; d <= depth; ++d) {
    levels.push_back(level);
    std::set<int> next;
    for (int k : level)
      for (const auto& e : scheme.succ[k]) next.insert(e.child);
    level = std::move(next);
  }
  return levels;
}

/// Shared construction for the single-root chains: per-node prescriptions
/// follow the scheme's edges with the given inertia rule.
ValuationChain scheme_chain(const TreeScheme& scheme, int depth,
                            const std::vector<std::int64_t>& degrees,
                            bool split_inertia) {
  ValuationChain chain;
  chain.root_tags = {"v"};
  chain.nodes.push_back({0, -1, 1, 1, 1, 1, 0, {}, scheme.root});
  chain.level_index.push_back({0});

  for (int s = 0; s < depth; ++s) {
    ExtensionStep step;
    step.degree = degrees[s];
    std::vector<int> next_level;
    for (int node : chain.level_index[s]) {
      const ChainNode& parent = chain.nodes[node];
      const auto& edges = scheme.succ[parent.kind];
      std::vector<std::pair<std::int64_t, std::int64_t>> ef;
      std::int64_t w = node_weight(scheme, parent.kind);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        std::int64_t f = split_inertia ? step.degree / w : 1;
        ef.emplace_back(edges[i].weight, f);
        ChainNode child;
        child.level = s + 1;
        child.parent = node;
        child.e_step = edges[i].weight;
        child.f_step = f;
        child.e_acc = parent.e_acc * child.e_step;
        child.f_acc = parent.f_acc * child.f_step;
        child.root = 0;
        child.address = parent.address;
        child.address.push_back(static_cast<int>(i));
        child.kind = edges[i].child;
        next_level.push_back(static_cast<int>(chain.nodes.size()));
        chain.nodes.push_back(std::move(child));
      }
      step.prescriptions.emplace_back(node, std::move(ef));
    }
    chain.steps.push_back(std::move(step));
    chain.level_index.push_back(std::move(next_level));
  }
  return chain;
}

}  // namespace

ValuationChain chain_from_balanced(const TreeScheme& scheme, int depth) {
  if (depth < 0) throw input_error("negative chain depth");
  WeightClass wc = check_weight_class(scheme, depth);
  if (wc.label == WeightClassLabel::LocallyBounded)
    throw input_error("scheme is not balanced");
  auto levels = level_kind_sets(scheme, depth);
  std::vector<std::int64_t> degrees;
  for (int s = 0; s < depth; ++s)
    degrees.push_back(node_weight(scheme, *levels[s].begin()));
  return scheme_chain(scheme, depth, degrees, /*split_inertia=*/false);
}

ValuationChain chain_from_locbound(const TreeScheme& scheme, int depth) {
  if (depth < 0) throw input_error("negative chain depth");
  scheme.validate();
  auto levels = level_kind_sets(scheme, depth);
  std::vector<std::int64_t> degrees;
  for (int s = 0; s < depth; ++s) {
    std::int64_t d = 1;
    for (int k : levels[s]) d = std::lcm(d, node_weight(scheme, k));
    degrees.push_back(d);
  }
  return scheme_chain(scheme, depth, degrees, /*split_inertia=*/true);
}

ValuationChain staggered_chain(
    const std::vector<std::pair<std::string, TreeScheme>>& forest, int depth) {
  if (forest.empty()) throw input_error("staggered chain needs at least one root");
  if (depth < 0) throw input_error("negative chain depth");
  std::int64_t weight = 0;
  for (const auto& [tag, scheme] : forest) {
    WeightClass wc = check_weight_class(scheme);
    if (wc.label != WeightClassLabel::TotallyBalanced)
      throw input_error("staggered chain requires totally balanced schemes");
    if (weight == 0) weight = wc.common_weight;
    if (wc.common_weight != weight)
      throw input_error("staggered chain requires one common weight");
  }

  ValuationChain chain;
  chain.level_index.emplace_back();
  for (std::size_t j = 0; j < forest.size(); ++j) {
    chain.root_tags.push_back(forest[j].first);
    ChainNode root;
    root.root = static_cast<int>(j);
    // Root j starts following its scheme at global step j+1.
    root.kind = (j == 0) ? forest[j].second.root : -1;
    chain.level_index[0].push_back(static_cast<int>(chain.nodes.size()));
    chain.nodes.push_back(std::move(root));
  }

  for (int s = 1; s <= depth; ++s) {
    ExtensionStep step;
    step.degree = weight;
    std::vector<int> next_level;
    for (int node : chain.level_index[s - 1]) {
      const ChainNode parent = chain.nodes[node];
      const TreeScheme& scheme = forest[parent.root].second;
      std::vector<std::pair<std::int64_t, std::int64_t>> ef;
      auto add_child = [&](std::int64_t e, std::int64_t f, int kind, int index) {
        ChainNode child;
        child.level = s;
        child.parent = node;
        child.e_step = e;
        child.f_step = f;
        child.e_acc = parent.e_acc * e;
        child.f_acc = parent.f_acc * f;
        child.root = parent.root;
        child.address = parent.address;
        child.address.push_back(index);
        child.kind = kind;
        next_level.push_back(static_cast<int>(chain.nodes.size()));
        chain.nodes.push_back(std::move(child));
      };
      if (parent.kind < 0) {
        // Not yet entered: one trivial extension keeps the root single. The
        // child becomes the scheme's root when its entry step comes next.
        int entry_kind =
            (s == parent.root) ? scheme.root : -1;
        ef.emplace_back(1, weight);
        add_child(1, weight, entry_kind, 0);
      } else {
        const auto& edges = scheme.succ[parent.kind];
        for (std::size_t i = 0; i < edges.size(); ++i) {
          ef.emplace_back(edges[i].weight, 1);
          add_child(edges[i].weight, 1, edges[i].child, static_cast<int>(i));
        }
      }
      step.prescriptions.emplace_back(node, std::move(ef));
    }
    chain.steps.push_back(std::move(step));
    chain.level_index.push_back(std::move(next_level));
  }
  return chain;
}

namespace {

UnfoldedTree chain_tree(const ValuationChain& chain, const std::vector<int>& node_set,
                        bool check_bounds) {
  UnfoldedTree tree;
  std::vector<int> remap(chain.nodes.size(), -1);
  for (int idx : node_set) {
    const ChainNode& n = chain.nodes[idx];
    int parent = n.parent >= 0 ? remap[n.parent] : -1;
    if (n.parent >= 0 && parent < 0)
      throw input_error("chain node set is not closed under parents");
    int id = static_cast<int>(tree.nodes.size());
    remap[idx] = id;
    tree.nodes.push_back({parent, parent >= 0 ? n.e_step : 0, chain.node_id(idx),
                          n.address});
    tree.children.emplace_back();
    if (parent >= 0) tree.children[parent].push_back(id);
  }
  if (check_bounds) {
    // Outbound weight of every vertex is capped by the step degree: that is
    // the fundamental-equality bound sum(e) <= sum(e*f) = degree.
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.children[i].empty()) continue;
      int level = static_cast<int>(tree.nodes[tree.children[i][0]].address.size());
      std::int64_t w = 0;
      for (int c : tree.children[i]) w += tree.nodes[c].weight;
      const ExtensionStep& step = chain.steps[level - 1];
      if (w > step.degree)
        throw input_error("outbound weight exceeds step degree at " +
                          tree.nodes[i].label);
    }
  }
  return tree;
}

}  // namespace

UnfoldedTree ramification_tree(const ValuationChain& chain) {
  ChainReport report = validate_chain(chain);
  if (!report.ok) throw input_error("chain does not validate");
  if (chain.root_tags.size() != 1)
    throw input_error("ramification tree requires a single-root chain");
  std::vector<int> all(chain.nodes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return chain_tree(chain, all, /*check_bounds=*/true);
}

std::vector<std::pair<std::string, UnfoldedTree>> per_root_trees(
    const ValuationChain& chain) {
  std::vector<std::pair<std::string, UnfoldedTree>> out;
  for (std::size_t r = 0; r < chain.root_tags.size(); ++r) {
    std::vector<int> nodes;
    for (std::size_t i = 0; i < chain.nodes.size(); ++i)
      if (chain.nodes[i].root == static_cast<int>(r))
        nodes.push_back(static_cast<int>(i));
    out.emplace_back(chain.root_tags[r], chain_tree(chain, nodes, false));
  }
  return out;
}

Ordinal forest_spr(const std::vector<Ordinal>& per_root) {
  if (per_root.empty()) throw input_error("empty forest");
  return *std::max_element(per_root.begin(), per_root.end());
}

Ordinal forest_spr(const EventualOrdinalSeq& per_root) { return sup_eventual(per_root); }

}  // namespace sptree
