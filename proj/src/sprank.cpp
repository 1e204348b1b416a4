#include "sptree/sprank.hpp"

#include <algorithm>

#include "sptree/errors.hpp"

namespace sptree {

bool CritAnalysis::tail_in_stage(std::size_t tail, int stage) const {
  if (stage >= static_cast<int>(in_crit.size())) return false;
  return in_crit[stage][tail] != 0;
}

bool CritAnalysis::kinds_in_stage(const std::vector<int>& inf_kinds, int stage) const {
  if (stage <= 0) return true;
  if (stage - 1 >= static_cast<int>(witness_flag.size())) return false;
  for (int k : inf_kinds)
    if (!witness_flag[stage - 1][k]) return false;
  return true;
}

int CritAnalysis::kinds_height(const std::vector<int>& inf_kinds) const {
  int stage = 0;
  while (kinds_in_stage(inf_kinds, stage + 1)) ++stage;
  return stage + 1;
}

CritAnalysis analyze_crit(const TreeScheme& scheme) {
  auto ram = check_finite_ramification(scheme);
  if (!ram.finitely_ramified)
    throw input_error("criticality fixpoint requires a finitely ramified scheme");

  CritAnalysis out;
  out.tails = enumerate_tail_kinds(scheme);
  int n = static_cast<int>(scheme.kinds.size());
  auto reach = reachability_masks(scheme);

  // ram_land[k]: kinds b that sit at the far end of some weight >= 2 edge
  // reachable from k. A witness path from k crosses such an edge and then
  // continues to a surviving cycle.
  std::vector<std::uint64_t> ram_land(n, 0);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (reach[k] & (std::uint64_t{1} << a))
        for (const auto& e : scheme.succ[a])
          if (e.weight >= 2) ram_land[k] |= std::uint64_t{1} << e.child;

  std::vector<std::uint64_t> cycle_mask(out.tails.size(), 0);
  for (std::size_t t = 0; t < out.tails.size(); ++t)
    for (int k : out.tails[t].cycle_kinds)
      cycle_mask[t] |= std::uint64_t{1} << k;

  out.height.assign(out.tails.size(), 0);
  std::vector<char> alive(out.tails.size(), 1);
  out.in_crit.push_back(alive);

  int max_stages = n + 2;
  for (int stage = 0;; ++stage) {
    if (stage > max_stages)
      throw input_error("criticality fixpoint failed to empty");  // cannot happen
    // Kinds reachable together with one weight >= 2 crossing into some
    // surviving cycle.
    std::uint64_t alive_kinds = 0;
    for (std::size_t t = 0; t < out.tails.size(); ++t)
      if (alive[t]) alive_kinds |= cycle_mask[t];
    std::vector<char> flag(n, 0);
    for (int k = 0; k < n; ++k) {
      std::uint64_t land = ram_land[k];
      for (int b = 0; b < n && !flag[k]; ++b)
        if (land & (std::uint64_t{1} << b))
          if (reach[b] & alive_kinds) flag[k] = 1;
    }
    out.witness_flag.push_back(flag);

    bool any = false;
    std::vector<char> next(out.tails.size(), 0);
    for (std::size_t t = 0; t < out.tails.size(); ++t) {
      if (!alive[t]) continue;
      bool keep = true;
      for (int k : out.tails[t].cycle_kinds)
        if (!flag[k]) {
          keep = false;
          break;
        }
      if (keep) {
        next[t] = 1;
        any = true;
      } else {
        out.height[t] = stage + 1;
      }
    }
    out.in_crit.push_back(next);
    alive = std::move(next);
    if (!any) {
      out.empty_stage = stage + 1;
      break;
    }
  }
  return out;
}

std::vector<TailDescriptor> crit_fixpoint(const TreeScheme& scheme, int stage) {
  if (stage < 0) throw input_error("negative fixpoint stage");
  CritAnalysis analysis = analyze_crit(scheme);
  std::vector<TailDescriptor> out;
  for (std::size_t t = 0; t < analysis.tails.size(); ++t)
    if (analysis.tail_in_stage(t, stage)) out.push_back(analysis.tails[t]);
  return out;
}

Ordinal sph_path(const TreeScheme& scheme, const TailDescriptor& tail) {
  CritAnalysis analysis = analyze_crit(scheme);
  for (std::size_t t = 0; t < analysis.tails.size(); ++t)
    if (analysis.tails[t].id == tail.id)
      return Ordinal::nat(static_cast<std::uint64_t>(analysis.height[t]));
  throw input_error("unknown tail class '" + tail.id + "'");
}

Ordinal sph_path(const TreeScheme& scheme, const PathDescriptor& path) {
  CritAnalysis analysis = analyze_crit(scheme);
  auto kinds = infinitely_visited_kinds(scheme, path);
  return Ordinal::nat(static_cast<std::uint64_t>(analysis.kinds_height(kinds)));
}

Ordinal spr_fixpoint(const TreeScheme& scheme) {
  CritAnalysis analysis = analyze_crit(scheme);
  return Ordinal::nat(static_cast<std::uint64_t>(analysis.empty_stage));
}

Ordinal spr_symbolic(const ConstructionTerm& term) {
  if (term.op == ConstructionTerm::Op::Base) return Ordinal::nat(1);
  EventualOrdinalSeq args;
  if (term.periodic_args()) {
    std::vector<Ordinal> ranks;
    ranks.reserve(term.periodic.size());
    for (const auto& sub : term.periodic) ranks.push_back(spr_symbolic(sub));
    args = EventualOrdinalSeq::eventually_periodic({}, std::move(ranks));
  } else {
    // Argument n is the family tree of rank fundamental_seq(limit, n-1) + 1,
    // so the rank sequence is that fundamental sequence shifted by one.
    args = EventualOrdinalSeq::increasing({*term.program_limit, 1});
  }
  return limsup_eventual(args).succ();
}

}  // namespace sptree
