#include "sptree/verify.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/ideal.hpp"
#include "sptree/json_io.hpp"
#include "sptree/sprank.hpp"
#include "sptree/topology.hpp"
#include "sptree/valuation.hpp"

namespace sptree {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string VerifyReport::text() const {
  std::string out;
  for (const auto& c : checks)
    out += (c.passed ? "[PASS] " : "[FAIL] ") + c.name + " - " + c.detail + "\n";
  return out;
}

std::string VerifyReport::json_text() const {
  nlohmann::json j;
  j["passed"] = all_passed();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  return j.dump(2) + "\n";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Every vertex of unfold(scheme, depth) has the expected outbound weight.
/// Node weight is kind-determined, so walking the level kind sets covers all
/// vertices without materializing the unfolding.
bool unfold_weights_equal(const TreeScheme& scheme, int depth, std::int64_t expected) {
  std::set<int> level{scheme.root};
  for (int d = 0; d <= depth; ++d) {
    for (int k : level)
      if (node_weight(scheme, k) != expected) return false;
    std::set<int> next;
    for (int k : level)
      for (const auto& e : scheme.succ[k]) next.insert(e.child);
    level = std::move(next);
  }
  return true;
}

CheckResult check_family_rank_symbolic() {
  CheckResult result{"family-rank-symbolic", true, ""};
  auto start = Clock::now();
  std::vector<Ordinal> ranks = {
      Ordinal::nat(1),
      Ordinal::nat(2),
      Ordinal::nat(3),
      Ordinal::nat(4),
      Ordinal::omega().succ(),
      Ordinal::omega().succ().succ(),
      Ordinal::from_terms({{1, 2}, {0, 1}}),  // w*2+1
      Ordinal::from_terms({{2, 1}, {0, 1}}),  // w^2+1
  };
  std::vector<FamilyVariant> variants = {{FamilyVariant::Tag::Balanced3, 3},
                                         {FamilyVariant::Tag::Countable, 3}};
  int total = 0, good = 0;
  for (const auto& variant : variants)
    for (const auto& rank : ranks) {
      ++total;
      BuiltTree tree = build_rank_tree(rank, variant);
      if (spr_symbolic(tree.term()) == rank) ++good;
    }
  result.passed = good == total;
  if (ms_since(start) > 1000.0) {
    result.passed = false;
    result.detail = "exceeded the 1s budget";
  } else {
    result.detail = std::to_string(good) + "/" + std::to_string(total) +
                    " family members at their expected rank";
  }
  return result;
}

CheckResult check_fixpoint_symbolic_agreement(const std::vector<CorpusEntry>& corpus) {
  CheckResult result{"fixpoint-symbolic-agreement", true, ""};
  auto start = Clock::now();
  int total = 0, good = 0;
  for (const auto& entry : corpus) {
    if (entry.tree.lazy()) continue;
    ++total;
    if (spr_fixpoint(entry.tree.scheme()) == spr_symbolic(entry.tree.term())) ++good;
  }
  result.passed = good == total && total > 0;
  if (ms_since(start) > 5000.0) {
    result.passed = false;
    result.detail = "exceeded the 5s budget";
  } else {
    result.detail = std::to_string(good) + "/" + std::to_string(total) +
                    " schemes agree between fixpoint and symbolic rank";
  }
  return result;
}

CheckResult check_graft_rank_law(const std::vector<CorpusEntry>& corpus,
                                 const std::vector<TreeScheme>& random_schemes) {
  CheckResult result{"graft-rank-law", true, ""};
  std::vector<TreeScheme> schemes;
  for (const auto& entry : corpus)
    if (!entry.tree.lazy()) schemes.push_back(entry.tree.scheme());
  schemes.insert(schemes.end(), random_schemes.begin(), random_schemes.end());
  int total = 0, good = 0;
  for (const auto& s : schemes) {
    ++total;
    GraftScheme graft = spine_graft({s}, 2);
    if (spr_fixpoint(graft.scheme) == spr_fixpoint(s).succ()) ++good;
  }
  result.passed = good == total && total >= 20;
  result.detail = std::to_string(good) + "/" + std::to_string(total) +
                  " schemes satisfy rank(graft[S]) = rank(S) + 1";
  return result;
}

CheckResult check_embed_weight_law(const std::vector<CorpusEntry>& corpus,
                                   std::mt19937_64& rng) {
  CheckResult result{"embed-weight-law", true, ""};
  int total = 0, good = 0;
  for (const auto& entry : corpus) {
    if (!entry.tree.is_graft()) continue;
    const GraftScheme& graft = entry.tree.graft();
    for (int i = 1; i <= 6; ++i) {
      const TreeScheme& arg = graft.args[(i - 1) % graft.period];
      std::uniform_int_distribution<int> steps(0, 4);
      PathDescriptor inner = random_maximal_path(rng, arg, steps(rng));
      PathDescriptor lifted = embed_path(graft, i, inner);
      PathWeight inner_w = path_weight(arg, inner);
      PathWeight lifted_w = path_weight(graft.scheme, lifted);
      ++total;
      if (inner_w.finite && lifted_w.finite && lifted_w.value == 2 * inner_w.value)
        ++good;
    }
  }
  result.passed = good == total && total >= 50;
  result.detail = std::to_string(good) + "/" + std::to_string(total) +
                  " embedded paths double their weight";
  return result;
}

std::vector<std::pair<std::string, ValuationChain>> build_chain_corpus(
    const std::vector<CorpusEntry>& corpus,
    const std::vector<TreeScheme>& random_schemes, int depth) {
  std::vector<std::pair<std::string, ValuationChain>> chains;
  for (const auto& entry : corpus) {
    if (entry.tree.lazy()) continue;
    const TreeScheme& s = entry.tree.scheme();
    WeightClass wc = check_weight_class(s);
    if (wc.label != WeightClassLabel::LocallyBounded)
      chains.emplace_back(entry.name + "/balanced", chain_from_balanced(s, depth));
    chains.emplace_back(entry.name + "/locbound", chain_from_locbound(s, depth));
  }
  for (std::size_t i = 0; i < random_schemes.size(); ++i)
    chains.emplace_back("random" + std::to_string(i) + "/locbound",
                        chain_from_locbound(random_schemes[i], std::min(depth, 6)));
  return chains;
}

CheckResult check_fundamental_equality(
    const std::vector<std::pair<std::string, ValuationChain>>& chains,
    const ValuationChain& staggered) {
  CheckResult result{"fundamental-equality", true, ""};
  int steps = 0, failures = 0;
  auto count = [&](const ValuationChain& chain) {
    ChainReport report = validate_chain(chain);
    for (const auto& s : report.steps) {
      ++steps;
      if (!s.ok) ++failures;
    }
    if (!report.structural_failures.empty()) ++failures;
  };
  for (const auto& [name, chain] : chains) count(chain);
  count(staggered);
  result.passed = failures == 0 && steps > 0;
  result.detail = std::to_string(steps) + " chain steps validated, " +
                  std::to_string(failures) + " failures";
  return result;
}

CheckResult check_round_trip(const std::vector<CorpusEntry>& corpus,
                             const std::vector<TreeScheme>& random_schemes) {
  CheckResult result{"chain-tree-round-trip", true, ""};
  int total = 0, good = 0;
  auto roundtrip = [&](const TreeScheme& s, int depth, bool balanced) {
    ValuationChain chain =
        balanced ? chain_from_balanced(s, depth) : chain_from_locbound(s, depth);
    UnfoldedTree reconstructed = ramification_tree(chain);
    ++total;
    if (weighted_tree_isomorphic(reconstructed, unfold(s, depth))) ++good;
  };
  for (const auto& entry : corpus) {
    if (entry.tree.lazy()) continue;
    const TreeScheme& s = entry.tree.scheme();
    bool balanced = check_weight_class(s).label != WeightClassLabel::LocallyBounded;
    for (int d = 0; d <= 8; ++d) {
      if (balanced) roundtrip(s, d, true);
      roundtrip(s, d, false);
    }
  }
  for (const auto& s : random_schemes)
    for (int d = 0; d <= 6; ++d) roundtrip(s, d, false);
  result.passed = good == total;
  result.detail = std::to_string(good) + "/" + std::to_string(total) +
                  " reconstructed trees isomorphic to the unfolding";
  return result;
}

CheckResult check_total_balance() {
  CheckResult result{"total-balance", true, ""};
  int total = 0, good = 0;
  for (int n : {3, 4, 5}) {
    FamilyVariant variant = n == 3 ? FamilyVariant{FamilyVariant::Tag::Balanced3, 3}
                                   : FamilyVariant{FamilyVariant::Tag::BalancedN, n};
    for (int rank = 1; rank <= 4; ++rank) {
      BuiltTree tree = build_rank_tree(Ordinal::nat(rank), variant);
      ++total;
      if (unfold_weights_equal(tree.scheme(), 10, n) &&
          check_weight_class(tree.scheme()).label == WeightClassLabel::TotallyBalanced)
        ++good;
    }
  }
  result.passed = good == total;
  result.detail = std::to_string(good) + "/" + std::to_string(total) +
                  " family trees totally balanced at depth 10";
  return result;
}

CheckResult check_criticality_dichotomy(const std::vector<CorpusEntry>& corpus) {
  CheckResult result{"criticality-dichotomy", true, ""};
  int dichotomy = 0, dichotomy_good = 0;
  int witnesses = 0, witnesses_good = 0;
  int refutations = 0, refutations_good = 0;
  for (const auto& entry : corpus) {
    if (entry.tree.lazy()) continue;
    const TreeScheme& s = entry.tree.scheme();
    CritAnalysis analysis = analyze_crit(s);
    for (std::size_t t = 0; t < analysis.tails.size(); ++t) {
      PathDescriptor path = representative_path(s, analysis.tails[t]);
      ++dichotomy;
      if (is_critical(s, path) == analysis.tail_in_stage(t, 1)) ++dichotomy_good;
      for (int alpha = 1; alpha <= 3; ++alpha) {
        if (analysis.tail_in_stage(t, alpha)) {
          for (std::size_t level : {path.prefix.size(), path.prefix.size() + 1}) {
            ++witnesses;
            auto witness = criticality_witness(s, path, alpha, level);
            if (witness && witness->nu_value >= 2 &&
                analysis.kinds_in_stage(infinitely_visited_kinds(s, witness->witness),
                                        alpha - 1))
              ++witnesses_good;
          }
        } else if (analysis.tail_in_stage(t, alpha - 1)) {
          // The tail drops exactly at this stage: some cycle kind lacks a
          // witness, which refutes membership at that vertex.
          auto flags = analysis.witness_flag[alpha - 1];
          std::vector<int> steps =
              expand_steps(path, path.prefix.size() + path.cycle.size());
          int kind = s.root;
          std::size_t bad_level = 0;
          bool found = false;
          for (std::size_t p = 0; p < steps.size(); ++p) {
            if (p >= path.prefix.size() && !flags[kind]) {
              bad_level = p;
              found = true;
              break;
            }
            kind = s.succ[kind][steps[p]].child;
          }
          if (!found && !flags[kind]) {
            bad_level = steps.size();
            found = true;
          }
          if (found) {
            ++refutations;
            if (!criticality_witness(s, path, alpha, bad_level).has_value())
              ++refutations_good;
          }
        }
      }
    }
  }
  result.passed = dichotomy == dichotomy_good && witnesses == witnesses_good &&
                  refutations == refutations_good && dichotomy > 0 && witnesses > 0;
  std::ostringstream detail;
  detail << dichotomy_good << "/" << dichotomy << " tails match stage-1 membership, "
         << witnesses_good << "/" << witnesses << " witnesses produced, "
         << refutations_good << "/" << refutations << " refutations confirmed";
  result.detail = detail.str();
  return result;
}

CheckResult check_topology_correspondence() {
  CheckResult result{"topology-correspondence", true, ""};
  int equal = 0, equal_total = 0, cantor = 0, cantor_total = 0;
  for (int rank = 1; rank <= 3; ++rank) {
    BuiltTree tree =
        build_rank_tree(Ordinal::nat(rank), {FamilyVariant::Tag::Countable, 3});
    ++equal_total;
    if (verify_crit_equals_derived(tree.scheme(), 3).all_equal) ++equal;
  }
  for (int rank = 1; rank <= 4; ++rank) {
    BuiltTree tree =
        build_rank_tree(Ordinal::nat(rank), {FamilyVariant::Tag::Balanced3, 3});
    ++cantor_total;
    if (cantor_witnesses(tree.scheme(), 10).all()) ++cantor;
  }
  result.passed = equal == equal_total && cantor == cantor_total;
  result.detail = std::to_string(equal) + "/" + std::to_string(equal_total) +
                  " countable trees match the derived sequence, " +
                  std::to_string(cantor) + "/" + std::to_string(cantor_total) +
                  " balanced trees pass the Cantor witnesses";
  return result;
}

CheckResult check_successor_rank_random(std::mt19937_64& rng) {
  CheckResult result{"successor-rank-random", true, ""};
  int total = 100, good = 0;
  bool in_budget = true;
  for (int i = 0; i < total; ++i) {
    TreeScheme s = random_finitely_ramified_scheme(rng);
    auto start = Clock::now();
    Ordinal rank = spr_fixpoint(s);
    if (ms_since(start) > 10000.0) in_budget = false;
    if (rank.is_finite() && rank.finite_value() >= 1) ++good;
  }
  result.passed = good == total && in_budget;
  result.detail = std::to_string(good) + "/" + std::to_string(total) +
                  " random schemes reach a finite successor rank" +
                  (in_budget ? "" : " (budget exceeded)");
  return result;
}

CheckResult check_forest_limit_rank(const ValuationChain& staggered,
                                    const std::vector<TreeScheme>& forest_schemes) {
  CheckResult result{"forest-limit-rank", true, ""};
  bool sup_ok =
      forest_spr(EventualOrdinalSeq::increasing({Ordinal::omega(), 1})) ==
      Ordinal::omega();

  bool chain_ok = validate_chain(staggered).ok;
  auto roots = per_root_trees(staggered);
  int matched = 0;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const UnfoldedTree& tree = roots[r].second;
    // Entry node of root r sits at level r along the single pre-entry chain.
    int entry = 0;
    bool found = true;
    for (std::size_t step = 0; step < r; ++step) {
      if (tree.children[entry].size() != 1) {
        found = false;
        break;
      }
      entry = tree.children[entry][0];
    }
    if (!found) continue;
    UnfoldedTree sub = subtree_at(tree, entry);
    int depth = staggered.depth() - static_cast<int>(r);
    if (weighted_tree_isomorphic(sub, unfold(forest_schemes[r], depth))) ++matched;
  }
  result.passed = sup_ok && chain_ok && matched == static_cast<int>(roots.size());
  result.detail = std::string(sup_ok ? "supremum reaches the limit rank, "
                                     : "supremum misses the limit rank, ") +
                  std::to_string(matched) + "/" + std::to_string(roots.size()) +
                  " staggered roots match their scheme truncations";
  return result;
}

}  // namespace

VerifyReport run_verification(std::uint64_t seed) {
  VerifyReport report;
  std::mt19937_64 rng(seed);

  std::vector<CorpusEntry> corpus = family_corpus();
  std::vector<TreeScheme> random_schemes;
  for (int i = 0; i < 12; ++i)
    random_schemes.push_back(random_finitely_ramified_scheme(rng));

  std::vector<TreeScheme> forest_schemes;
  std::vector<std::pair<std::string, TreeScheme>> forest;
  for (int rank = 1; rank <= 3; ++rank) {
    BuiltTree tree =
        build_rank_tree(Ordinal::nat(rank), {FamilyVariant::Tag::Balanced3, 3});
    forest_schemes.push_back(tree.scheme());
    forest.emplace_back("M" + std::to_string(rank), tree.scheme());
  }
  ValuationChain staggered = staggered_chain(forest, 6);
  auto chains = build_chain_corpus(corpus, random_schemes, 8);

  report.checks.push_back(check_family_rank_symbolic());
  report.checks.push_back(check_fixpoint_symbolic_agreement(corpus));
  report.checks.push_back(check_graft_rank_law(corpus, random_schemes));
  report.checks.push_back(check_embed_weight_law(corpus, rng));
  report.checks.push_back(check_fundamental_equality(chains, staggered));
  report.checks.push_back(check_round_trip(corpus, random_schemes));
  report.checks.push_back(check_total_balance());
  report.checks.push_back(check_criticality_dichotomy(corpus));
  report.checks.push_back(check_topology_correspondence());
  report.checks.push_back(check_successor_rank_random(rng));
  report.checks.push_back(check_forest_limit_rank(staggered, forest_schemes));
  return report;
}

}  // namespace sptree
