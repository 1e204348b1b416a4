#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/ideal.hpp"
#include "sptree/json_io.hpp"
#include "sptree/sprank.hpp"
#include "sptree/topology.hpp"
#include "sptree/valuation.hpp"
#include "sptree/verify.hpp"

namespace {

using nlohmann::json;
using namespace sptree;

// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 missing/unreadable file, 4 bound violation, 5 invalid input.
constexpr int kExitVerifyFailed = 1;
constexpr int kExitIo = 3;
constexpr int kExitBound = 4;
constexpr int kExitInput = 5;

int depth_cap() {
  if (const char* env = std::getenv("SPRANK_MAX_DEPTH")) {
    int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return 12;
}

void check_depth(int depth) {
  if (depth < 0 || depth > depth_cap())
    throw bound_error("depth " + std::to_string(depth) + " exceeds the cap of " +
                      std::to_string(depth_cap()) + " (set SPRANK_MAX_DEPTH)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    save_text_file(out_path, text);
}

TreeScheme load_scheme(const std::string& path) {
  return scheme_from_json(load_json_file(path));
}

ConstructionTerm load_term(const std::string& path) {
  json j = load_json_file(path);
  if (!j.contains("meta") || !j.at("meta").contains("construction"))
    throw input_error("scheme file carries no construction metadata");
  return term_from_json(j.at("meta").at("construction"));
}

int run_build(const std::string& alpha, const std::string& variant_name, int n,
              int truncate_depth, const std::string& out_path) {
  Ordinal rank = Ordinal::parse(alpha);
  FamilyVariant variant = FamilyVariant::parse(
      variant_name == "balancedN" ? "balanced" + std::to_string(n) : variant_name);
  BuiltTree tree = build_rank_tree(rank, variant);

  json j;
  if (tree.lazy()) {
    j["lazy"] = true;
    j["meta"] = json::parse(make_meta(tree.term()));
    if (truncate_depth >= 0) {
      check_depth(truncate_depth);
      j["truncation"] = unfolded_to_json(tree.unfold_lazy(truncate_depth));
    }
  } else {
    TreeScheme scheme = tree.scheme();
    scheme.meta = make_meta(tree.term());
    j = scheme_to_json(scheme);
    if (truncate_depth >= 0) {
      check_depth(truncate_depth);
      j["truncation"] = unfolded_to_json(unfold(scheme, truncate_depth));
    }
  }
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int run_sprank(const std::string& scheme_path, const std::string& mode, bool per_tail,
               const std::string& out_path) {
  json out;
  if (mode == "symbolic") {
    ConstructionTerm term = load_term(scheme_path);
    out["spr"] = spr_symbolic(term).str();
    out["mode"] = "symbolic";
  } else if (mode == "fixpoint") {
    TreeScheme scheme = load_scheme(scheme_path);
    CritAnalysis analysis = analyze_crit(scheme);
    out["spr"] = Ordinal::nat(analysis.empty_stage).str();
    out["mode"] = "fixpoint";
    if (per_tail) {
      json tails = json::object();
      for (std::size_t t = 0; t < analysis.tails.size(); ++t)
        tails[analysis.tails[t].id] = Ordinal::nat(analysis.height[t]).str();
      out["per_tail"] = std::move(tails);
    }
  } else {
    throw input_error("unknown mode '" + mode + "'");
  }
  emit(out.dump(2) + "\n", out_path);
  return 0;
}

int run_chain(const std::string& scheme_path, const std::string& mode, int depth,
              const std::vector<std::string>& forest_args, const std::string& out_path) {
  check_depth(depth);
  ValuationChain chain;
  if (mode == "balanced") {
    chain = chain_from_balanced(load_scheme(scheme_path), depth);
  } else if (mode == "locbound") {
    chain = chain_from_locbound(load_scheme(scheme_path), depth);
  } else if (mode == "staggered") {
    std::vector<std::pair<std::string, TreeScheme>> forest;
    for (const auto& spec : forest_args) {
      std::size_t eq = spec.find('=');
      if (eq == std::string::npos)
        throw input_error("forest entries look like TAG=scheme.json");
      forest.emplace_back(spec.substr(0, eq), load_scheme(spec.substr(eq + 1)));
    }
    if (forest.empty()) throw input_error("staggered mode needs --tree entries");
    chain = staggered_chain(forest, depth);
  } else {
    throw input_error("unknown mode '" + mode + "'");
  }
  emit(chain_to_json(chain).dump(2) + "\n", out_path);
  return 0;
}

int run_ideal(const std::string& scheme_path, const std::string& expr_text,
              const std::string& query, const std::string& path_text,
              const std::string& out_path) {
  TreeScheme scheme = load_scheme(scheme_path);
  IdealExpr expr = IdealExpr::parse(expr_text);
  expr.validate(scheme);
  json out;
  out["expr"] = expr.str();
  if (query == "radical") {
    out["radical"] = is_radical(scheme, expr);
  } else if (query == "nu") {
    if (path_text.empty()) throw input_error("--query nu needs --path");
    PathDescriptor path = parse_path(path_text);
    out["path"] = path_str(path);
    out["nu"] = nu(scheme, expr, path);
  } else {
    throw input_error("unknown query '" + query + "'");
  }
  emit(out.dump(2) + "\n", out_path);
  return 0;
}

int run_topology(const std::string& scheme_path, int cb_max, bool verify_crit,
                 bool cantor, int depth, const std::string& out_path) {
  TreeScheme scheme = load_scheme(scheme_path);
  json out;
  DerivedAnnotation derived = cb_derivative(scheme, cb_max);
  json heights = json::object();
  for (std::size_t t = 0; t < derived.tails.size(); ++t)
    heights[derived.tails[t].id] = derived.cb_height[t] < 0
                                       ? json("inf")
                                       : json(Ordinal::nat(derived.cb_height[t]).str());
  out["cb_height"] = std::move(heights);
  json isolated = json::array();
  for (const auto& iso : isolated_paths(scheme)) {
    json e;
    e["tail"] = iso.tail.id;
    e["witness"] = address_str(iso.witness);
    isolated.push_back(std::move(e));
  }
  out["isolated"] = std::move(isolated);
  if (verify_crit) {
    CritDerivedReport report = verify_crit_equals_derived(scheme, cb_max);
    json stages = json::array();
    for (const auto& s : report.stages) {
      json e;
      e["stage"] = s.stage;
      e["equal"] = s.equal;
      e["crit"] = s.crit_ids;
      e["derived"] = s.derived_ids;
      stages.push_back(std::move(e));
    }
    out["crit_equals_derived"] = report.all_equal;
    out["stages"] = std::move(stages);
  }
  if (cantor) {
    check_depth(depth);
    CantorReport report = cantor_witnesses(scheme, depth);
    json c;
    c["nonempty"] = report.nonempty;
    c["min_two_successors"] = report.min_two_successors;
    c["finitely_branching"] = report.finitely_branching;
    c["clopen_basis_ok"] = report.clopen_basis_ok;
    c["max_branching"] = report.max_branching;
    c["all"] = report.all();
    out["cantor"] = std::move(c);
  }
  emit(out.dump(2) + "\n", out_path);
  return 0;
}

int run_export_dot(const std::string& scheme_path, int depth,
                   const std::string& out_path) {
  check_depth(depth);
  TreeScheme scheme = load_scheme(scheme_path);
  emit(to_dot(unfold(scheme, depth)), out_path);
  return 0;
}

int run_verify_all(std::uint64_t seed, const std::string& out_path) {
  VerifyReport report = run_verification(seed);
  std::cerr << report.text();
  emit(report.json_text(), out_path);
  return report.all_passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted omega-trees, valuation chains and their ranks"};
  app.require_subcommand(1);

  std::string alpha = "1", variant = "balanced3", out_path;
  int n = 4, truncate_depth = -1;
  auto* build = app.add_subcommand("build", "build a family tree of the given rank");
  build->add_option("--alpha", alpha, "rank in CNF notation, e.g. 3 or w^1*1+1")
      ->required();
  build->add_option("--variant", variant, "balanced3|countable|balancedN");
  build->add_option("--n", n, "successor count for balancedN");
  build->add_option("--depth", truncate_depth, "also emit a depth truncation");
  build->add_option("--out", out_path, "output file (stdout by default)");

  std::string scheme_path, mode = "fixpoint";
  bool per_tail = false;
  auto* sprank = app.add_subcommand("sprank", "rank of a scheme");
  sprank->add_option("--scheme", scheme_path, "scheme JSON file")->required();
  sprank->add_option("--mode", mode, "fixpoint|symbolic");
  sprank->add_flag("--per-tail", per_tail, "include per-tail heights");
  sprank->add_option("--out", out_path, "output file");

  std::string chain_mode = "balanced";
  int depth = 4;
  std::vector<std::string> forest_args;
  auto* chain = app.add_subcommand("chain", "valuation chain realizing a scheme");
  chain->add_option("--scheme", scheme_path, "scheme JSON file");
  chain->add_option("--mode", chain_mode, "balanced|locbound|staggered");
  chain->add_option("--depth", depth, "chain length")->required();
  chain->add_option("--tree", forest_args, "staggered roots as TAG=scheme.json");
  chain->add_option("--out", out_path, "output file");

  std::string expr, query = "radical", path_text;
  auto* ideal = app.add_subcommand("ideal", "ideal functions on the path space");
  ideal->add_option("--scheme", scheme_path, "scheme JSON file")->required();
  ideal->add_option("--expr", expr, "vertex-ideal product, e.g. 0.2^1*1.0^2")
      ->required();
  ideal->add_option("--query", query, "radical|nu");
  ideal->add_option("--path", path_text, "maximal path, e.g. 0.1~0");
  ideal->add_option("--out", out_path, "output file");

  int cb_max = 3;
  bool verify_crit = false, cantor = false;
  int cantor_depth = 8;
  auto* topology = app.add_subcommand("topology", "derived sequence of the path space");
  topology->add_option("--scheme", scheme_path, "scheme JSON file")->required();
  topology->add_option("--cb-max", cb_max, "derivative stages to compute");
  topology->add_flag("--verify-crit", verify_crit,
                     "compare with the criticality fixpoint");
  topology->add_flag("--cantor", cantor, "emit Cantor-space witnesses");
  topology->add_option("--depth", cantor_depth, "depth for the Cantor witnesses");
  topology->add_option("--out", out_path, "output file");

  std::uint64_t seed = 7;
  auto* verify = app.add_subcommand("verify-all", "run the full verification suite");
  verify->add_option("--seed", seed, "seed for the randomized checks");
  verify->add_option("--out", out_path, "output file");

  int dot_depth = 3;
  auto* export_dot = app.add_subcommand("export-dot", "DOT of a depth truncation");
  export_dot->add_option("--scheme", scheme_path, "scheme JSON file")->required();
  export_dot->add_option("--depth", dot_depth, "truncation depth");
  export_dot->add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return run_build(alpha, variant, n, truncate_depth, out_path);
    if (sprank->parsed()) return run_sprank(scheme_path, mode, per_tail, out_path);
    if (chain->parsed())
      return run_chain(scheme_path, chain_mode, depth, forest_args, out_path);
    if (ideal->parsed()) return run_ideal(scheme_path, expr, query, path_text, out_path);
    if (topology->parsed())
      return run_topology(scheme_path, cb_max, verify_crit, cantor, cantor_depth,
                          out_path);
    if (verify->parsed()) return run_verify_all(seed, out_path);
    if (export_dot->parsed()) return run_export_dot(scheme_path, dot_depth, out_path);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const bound_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBound;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
