#include "sptree/ideal.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "sptree/errors.hpp"

namespace sptree {

std::size_t IdealExpr::level() const {
  if (factors.empty()) throw input_error("ideal expression has no factors");
  return factors.front().vertex.size();
}

void IdealExpr::validate(const TreeScheme& scheme) const {
  std::size_t lvl = level();
  std::set<Address> seen;
  for (const auto& f : factors) {
    if (f.vertex.size() != lvl)
      throw input_error("ideal factors must share a common level");
    if (f.exponent < 1) throw input_error("ideal factor exponent must be >= 1");
    if (!seen.insert(f.vertex).second)
      throw input_error("duplicate vertex in ideal expression");
    kind_at(scheme, f.vertex);  // validates the address
  }
}

std::string IdealExpr::str() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += '*';
    out += address_str(factors[i].vertex);
    out += '^';
    out += std::to_string(factors[i].exponent);
  }
  return out;
}

IdealExpr IdealExpr::parse(std::string_view text) {
  IdealExpr expr;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('*', pos);
    std::string_view tok = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (tok.empty()) throw input_error("empty factor in ideal expression");
    Factor f;
    std::size_t caret = tok.find('^');
    if (caret == std::string_view::npos) {
      f.vertex = parse_address(tok);
      f.exponent = 1;
    } else {
      f.vertex = parse_address(tok.substr(0, caret));
      f.exponent = 0;
      for (char c : tok.substr(caret + 1)) {
        if (c < '0' || c > '9') throw input_error("invalid exponent in ideal expression");
        f.exponent = f.exponent * 10 + (c - '0');
      }
      if (f.exponent < 1) throw input_error("ideal factor exponent must be >= 1");
    }
    expr.factors.push_back(std::move(f));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return expr;
}

std::int64_t nu(const TreeScheme& scheme, const IdealExpr& ideal, const MaxIdealRef& M) {
  ideal.validate(scheme);
  if (!M.anchor.empty() || !M.infinite())
    throw input_error("maximal ideals are root-anchored infinite paths");
  validate_path(scheme, M);
  if (!path_weight(scheme, M).finite)
    throw input_error("path is infinitely ramified");

  std::size_t lvl = ideal.level();
  std::vector<int> steps = expand_steps(M, std::max(lvl, M.prefix.size()));
  std::int64_t total = 0;
  for (const auto& factor : ideal.factors) {
    if (!std::equal(factor.vertex.begin(), factor.vertex.end(), steps.begin()))
      continue;  // vertex off the path contributes 0
    // Weight of the subpath of M starting at the vertex; the cycle is
    // weight-1, so only the remaining prefix steps matter.
    std::int64_t w = 1;
    int kind = kind_at(scheme, factor.vertex);
    for (std::size_t i = lvl; i < M.prefix.size(); ++i) {
      w *= scheme.succ[kind][M.prefix[i]].weight;
      kind = scheme.succ[kind][M.prefix[i]].child;
    }
    total += factor.exponent * w;
  }
  return total;
}

std::vector<std::int64_t> max_subtree_weight(const TreeScheme& scheme) {
  auto ram = check_finite_ramification(scheme);
  if (!ram.finitely_ramified)
    throw input_error("subtree weights are unbounded on infinitely ramified schemes");

  // All cycles are weight-1, so weight >= 2 edges descend the condensation
  // order; the maximum is a longest-path product over kinds, constant on
  // strongly connected components.
  int n = static_cast<int>(scheme.kinds.size());
  auto reach = reachability_masks(scheme);
  std::vector<std::int64_t> best(n, 0);
  // Process kinds so that all strict successors are done first: order by the
  // number of reachable kinds (a superset relation refines the order within
  // which propagation below is monotone).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::popcount(reach[a]) < std::popcount(reach[b]);
  });
  bool changed = true;
  while (changed) {  // small graphs; a couple of sweeps settle the SCCs
    changed = false;
    for (int k : order) {
      std::int64_t w = 1;
      for (const auto& e : scheme.succ[k])
        w = std::max(w, e.weight * std::max<std::int64_t>(best[e.child], 1));
      if (w != best[k]) {
        best[k] = w;
        changed = true;
      }
    }
  }
  return best;
}

bool is_radical(const TreeScheme& scheme, const IdealExpr& ideal) {
  ideal.validate(scheme);
  auto best = max_subtree_weight(scheme);
  // Factors live at a common level, so any maximal path meets at most one of
  // them; the sup of the ideal function is the best single-factor value.
  for (const auto& f : ideal.factors) {
    std::int64_t top = f.exponent * best[kind_at(scheme, f.vertex)];
    if (top >= 2) return false;
  }
  return true;
}

bool is_critical(const TreeScheme& scheme, const MaxIdealRef& M) {
  return crit_alpha_membership(scheme, M, 1);
}

bool crit_alpha_membership(const TreeScheme& scheme, const MaxIdealRef& M, int alpha) {
  if (alpha < 0) throw input_error("negative stage");
  if (!M.anchor.empty() || !M.infinite())
    throw input_error("maximal ideals are root-anchored infinite paths");
  validate_path(scheme, M);
  CritAnalysis analysis = analyze_crit(scheme);
  return analysis.kinds_in_stage(infinitely_visited_kinds(scheme, M), alpha);
}

std::optional<CritWitness> criticality_witness(const TreeScheme& scheme,
                                               const MaxIdealRef& M, int alpha,
                                               std::size_t vertex_level) {
  if (alpha < 1) throw input_error("witness stage must be >= 1");
  validate_path(scheme, M);
  CritAnalysis analysis = analyze_crit(scheme);

  std::vector<int> steps = expand_steps(M, vertex_level);
  if (steps.size() < vertex_level)
    throw input_error("vertex level beyond the path");
  Address vertex(steps.begin(), steps.end());
  int vkind = kind_at(scheme, vertex);

  // Kinds whose cycles survive stage alpha-1.
  std::uint64_t alive = 0;
  for (std::size_t t = 0; t < analysis.tails.size(); ++t)
    if (analysis.tail_in_stage(t, alpha - 1))
      for (int k : analysis.tails[t].cycle_kinds) alive |= std::uint64_t{1} << k;
  if (alive == 0) return std::nullopt;
  auto reach = reachability_masks(scheme);

  // Search for the witness route: from the vertex kind, BFS to an edge of
  // weight >= 2 from whose target a surviving cycle is reachable.
  int n = static_cast<int>(scheme.kinds.size());
  std::vector<int> prev_kind(n, -1), prev_step(n, -2);
  std::deque<int> queue{vkind};
  std::vector<char> seen(n, 0);
  seen[vkind] = 1;
  int hit_kind = -1, hit_step = -1, land = -1;
  while (!queue.empty() && land < 0) {
    int k = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < scheme.succ[k].size(); ++i) {
      const auto& e = scheme.succ[k][i];
      if (e.weight >= 2 && (reach[e.child] & alive)) {
        hit_kind = k;
        hit_step = static_cast<int>(i);
        land = e.child;
        break;
      }
      if (!seen[e.child]) {
        seen[e.child] = 1;
        prev_kind[e.child] = k;
        prev_step[e.child] = static_cast<int>(i);
        queue.push_back(e.child);
      }
    }
  }
  if (land < 0) return std::nullopt;

  std::vector<int> route;
  for (int cur = hit_kind; cur != vkind; cur = prev_kind[cur])
    route.push_back(prev_step[cur]);
  std::reverse(route.begin(), route.end());
  route.push_back(hit_step);

  // Continue from the landing kind into the first surviving tail it reaches.
  const TailDescriptor* target = nullptr;
  for (std::size_t t = 0; t < analysis.tails.size(); ++t) {
    if (!analysis.tail_in_stage(t, alpha - 1)) continue;
    std::uint64_t mask = 0;
    for (int k : analysis.tails[t].cycle_kinds) mask |= std::uint64_t{1} << k;
    if (reach[land] & mask) {
      target = &analysis.tails[t];
      break;
    }
  }
  // Route from the landing kind to the target cycle, reusing the
  // representative machinery on a re-rooted scheme view.
  TreeScheme rerooted = scheme;
  rerooted.root = land;
  PathDescriptor continuation = representative_path(rerooted, *target);

  CritWitness w;
  w.vertex = vertex;
  w.witness.prefix = vertex;
  w.witness.prefix.insert(w.witness.prefix.end(), route.begin(), route.end());
  w.witness.prefix.insert(w.witness.prefix.end(), continuation.prefix.begin(),
                          continuation.prefix.end());
  w.witness.cycle = continuation.cycle;
  validate_path(scheme, w.witness);
  IdealExpr vertex_ideal;
  vertex_ideal.factors.push_back({vertex, 1});
  w.nu_value = nu(scheme, vertex_ideal, w.witness);
  return w;
}

IdealExpr radical_ideal_in(const TreeScheme& scheme, const MaxIdealRef& M) {
  validate_path(scheme, M);
  auto best = max_subtree_weight(scheme);
  std::size_t bound = M.prefix.size() + M.cycle.size() + 1;
  std::vector<int> steps = expand_steps(M, bound);
  int kind = scheme.root;
  for (std::size_t p = 0; p <= steps.size(); ++p) {
    if (best[kind] == 1) {
      IdealExpr expr;
      expr.factors.push_back({Address(steps.begin(), steps.begin() + p), 1});
      return expr;
    }
    if (p < steps.size()) kind = scheme.succ[kind][steps[p]].child;
  }
  throw input_error("no radical vertex ideal inside a critical maximal ideal");
}

}  // namespace sptree
