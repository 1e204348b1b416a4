#include "sptree/corpus.hpp"

#include <algorithm>
#include <set>

#include "sptree/errors.hpp"

namespace sptree {

TreeScheme random_finitely_ramified_scheme(std::mt19937_64& rng, int max_kinds,
                                           std::int64_t max_weight) {
  std::uniform_int_distribution<int> kind_count(2, max_kinds);
  int n = kind_count(rng);
  std::uniform_int_distribution<std::int64_t> weight(1, max_weight);
  std::uniform_int_distribution<int> target(0, n - 1);

  TreeScheme s;
  for (int i = 0; i < n; ++i) s.kinds.push_back("k" + std::to_string(i));
  s.root = 0;
  s.succ.resize(n);
  // Spanning edges keep every kind reachable; extra edges fill the quota.
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    s.succ[parent(rng)].push_back({i, weight(rng)});
  }
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> quota(1, 3);
    int want = quota(rng);
    while (static_cast<int>(s.succ[i].size()) < want)
      s.succ[i].push_back({target(rng), weight(rng)});
  }

  // Flatten heavy edges inside cycles so every cycle is weight-1. Iterate:
  // flattening cannot create new cycles, one pass over a fixed SCC partition
  // suffices, but recomputing keeps it obviously right.
  for (int pass = 0; pass < n + 1; ++pass) {
    auto check = check_finite_ramification(s);
    if (check.finitely_ramified) break;
    auto reach = reachability_masks(s);
    for (int k = 0; k < n; ++k)
      for (auto& e : s.succ[k])
        if (e.weight >= 2 && (reach[e.child] & (std::uint64_t{1} << k))) e.weight = 1;
  }
  s.validate();
  if (!all_paths_finitely_ramified(s))
    throw input_error("random scheme generation failed to flatten cycles");
  return s;
}

PathDescriptor random_maximal_path(std::mt19937_64& rng, const TreeScheme& scheme,
                                   int prefix_steps) {
  PathDescriptor path;
  int kind = scheme.root;
  for (int i = 0; i < prefix_steps; ++i) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(scheme.succ[kind].size()) - 1);
    int step = pick(rng);
    path.prefix.push_back(step);
    kind = scheme.succ[kind][step].child;
  }
  // Close the path on a tail cycle reachable from where the prefix ends.
  auto tails = enumerate_tail_kinds(scheme);
  std::vector<TailDescriptor> reachable;
  for (const auto& t : tails)
    if (std::find(t.basin_kinds.begin(), t.basin_kinds.end(), kind) !=
        t.basin_kinds.end())
      reachable.push_back(t);
  if (reachable.empty()) throw input_error("no tail cycle reachable");
  std::uniform_int_distribution<int> pick(0, static_cast<int>(reachable.size()) - 1);
  TreeScheme rerooted = scheme;
  rerooted.root = kind;
  PathDescriptor closing = representative_path(rerooted, reachable[pick(rng)]);
  path.prefix.insert(path.prefix.end(), closing.prefix.begin(), closing.prefix.end());
  path.cycle = closing.cycle;
  validate_path(scheme, path);
  return path;
}

std::vector<CorpusEntry> family_corpus() {
  std::vector<CorpusEntry> corpus;
  std::vector<FamilyVariant> variants = {{FamilyVariant::Tag::Balanced3, 3},
                                         {FamilyVariant::Tag::Countable, 3}};
  for (const auto& variant : variants)
    for (int rank = 1; rank <= 4; ++rank)
      corpus.push_back({"T" + std::to_string(rank) + "-" + variant.str(),
                        build_rank_tree(Ordinal::nat(rank), variant)});

  auto scheme_of = [&](int idx) { return corpus[idx].tree.scheme(); };
  auto add_graft = [&](const std::string& name, std::vector<TreeScheme> args) {
    GraftScheme graft = spine_graft(args, 2);
    ConstructionTerm term;
    term.op = ConstructionTerm::Op::Graft;
    term.branch_weight = 2;
    for (std::size_t i = 0; i < args.size(); ++i) {
      // Recover each argument's term from the corpus by scheme identity.
      for (const auto& entry : corpus)
        if (!entry.tree.lazy() && entry.tree.scheme() == args[i]) {
          term.periodic.push_back(entry.tree.term());
          break;
        }
    }
    if (term.periodic.size() != args.size())
      throw input_error("graft corpus argument is not a corpus member");
    TreeScheme scheme = graft.scheme;
    corpus.push_back(
        {name, BuiltTree(std::move(term), std::move(scheme), std::move(graft))});
  };

  add_graft("graft[T1b]", {scheme_of(0)});
  add_graft("graft[T2b]", {scheme_of(1)});
  add_graft("graft[T3b]", {scheme_of(2)});
  add_graft("graft[T1c]", {scheme_of(4)});
  add_graft("graft[T2c]", {scheme_of(5)});
  add_graft("graft[T1b,T2b]", {scheme_of(0), scheme_of(1)});
  add_graft("graft[T2b,T3b]", {scheme_of(1), scheme_of(2)});
  add_graft("graft[T1c,T2c]", {scheme_of(4), scheme_of(5)});
  add_graft("graft[T2c,T3c]", {scheme_of(5), scheme_of(6)});
  add_graft("graft[T1b,T2c]", {scheme_of(0), scheme_of(5)});
  add_graft("graft[T2b,T3b,T2c]", {scheme_of(1), scheme_of(2), scheme_of(5)});
  return corpus;
}

}  // namespace sptree
