#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "sptree/corpus.hpp"
#include "sptree/errors.hpp"
#include "sptree/ideal.hpp"
#include "sptree/json_io.hpp"
#include "sptree/sprank.hpp"
#include "sptree/topology.hpp"
#include "sptree/valuation.hpp"
#include "sptree/verify.hpp"

namespace py = pybind11;
using namespace sptree;
using nlohmann::json;

namespace {

TreeScheme scheme_from_text(const std::string& text) {
  return scheme_from_json(json::parse(text));
}

std::string build_tree(const std::string& alpha, const std::string& variant) {
  BuiltTree tree = build_rank_tree(Ordinal::parse(alpha), FamilyVariant::parse(variant));
  if (tree.lazy()) {
    json j;
    j["lazy"] = true;
    j["meta"] = json::parse(make_meta(tree.term()));
    return j.dump();
  }
  TreeScheme scheme = tree.scheme();
  scheme.meta = make_meta(tree.term());
  return scheme_to_json(scheme).dump();
}

std::string sprank(const std::string& scheme_text, const std::string& mode) {
  json in = json::parse(scheme_text);
  json out;
  if (mode == "symbolic") {
    if (!in.contains("meta") || !in.at("meta").contains("construction"))
      throw input_error("scheme carries no construction metadata");
    out["spr"] = spr_symbolic(term_from_json(in.at("meta").at("construction"))).str();
  } else {
    CritAnalysis analysis = analyze_crit(scheme_from_json(in));
    out["spr"] = Ordinal::nat(analysis.empty_stage).str();
    json tails = json::object();
    for (std::size_t t = 0; t < analysis.tails.size(); ++t)
      tails[analysis.tails[t].id] = Ordinal::nat(analysis.height[t]).str();
    out["per_tail"] = std::move(tails);
  }
  return out.dump();
}

std::string make_chain(const std::string& scheme_text, const std::string& mode,
                       int depth) {
  TreeScheme scheme = scheme_from_text(scheme_text);
  ValuationChain chain = mode == "balanced" ? chain_from_balanced(scheme, depth)
                                            : chain_from_locbound(scheme, depth);
  return chain_to_json(chain).dump();
}

bool chain_valid(const std::string& chain_text) {
  return validate_chain(chain_from_json(json::parse(chain_text))).ok;
}

std::int64_t ideal_nu(const std::string& scheme_text, const std::string& expr,
                      const std::string& path) {
  TreeScheme scheme = scheme_from_text(scheme_text);
  return nu(scheme, IdealExpr::parse(expr), parse_path(path));
}

bool ideal_radical(const std::string& scheme_text, const std::string& expr) {
  TreeScheme scheme = scheme_from_text(scheme_text);
  return is_radical(scheme, IdealExpr::parse(expr));
}

std::string topology_report(const std::string& scheme_text, int cb_max) {
  TreeScheme scheme = scheme_from_text(scheme_text);
  DerivedAnnotation derived = cb_derivative(scheme, cb_max);
  CritDerivedReport crit = verify_crit_equals_derived(scheme, cb_max);
  json out;
  json heights = json::object();
  for (std::size_t t = 0; t < derived.tails.size(); ++t)
    heights[derived.tails[t].id] = derived.cb_height[t] < 0
                                       ? json("inf")
                                       : json(Ordinal::nat(derived.cb_height[t]).str());
  out["cb_height"] = std::move(heights);
  out["crit_equals_derived"] = crit.all_equal;
  return out.dump();
}

std::string export_dot(const std::string& scheme_text, int depth) {
  return to_dot(unfold(scheme_from_text(scheme_text), depth));
}

py::tuple verify_all(std::uint64_t seed) {
  VerifyReport report = run_verification(seed);
  return py::make_tuple(report.all_passed(), report.json_text());
}

}  // namespace

PYBIND11_MODULE(sptree, m) {
  m.doc() = "weighted omega-trees, valuation chains and their ranks";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<bound_error>(m, "BoundError", PyExc_ValueError);

  m.def("ord_compare", [](const std::string& a, const std::string& b) {
    auto c = Ordinal::parse(a) <=> Ordinal::parse(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  });
  m.def("ord_classify", [](const std::string& a) {
    switch (Ordinal::parse(a).classify()) {
      case Ordinal::Kind::Zero:
        return "zero";
      case Ordinal::Kind::Successor:
        return "successor";
      default:
        return "limit";
    }
  });
  m.def("ord_succ", [](const std::string& a) { return Ordinal::parse(a).succ().str(); });
  m.def("fundamental_seq", [](const std::string& limit, std::uint64_t n) {
    return fundamental_seq(Ordinal::parse(limit), n).str();
  });

  m.def("build_tree", &build_tree, py::arg("alpha"), py::arg("variant") = "balanced3");
  m.def("sprank", &sprank, py::arg("scheme"), py::arg("mode") = "fixpoint");
  m.def("weight_class", [](const std::string& scheme_text) {
    WeightClass wc = check_weight_class(scheme_from_text(scheme_text));
    switch (wc.label) {
      case WeightClassLabel::TotallyBalanced:
        return "totally_balanced(" + std::to_string(wc.common_weight) + ")";
      case WeightClassLabel::Balanced:
        return std::string("balanced");
      default:
        return std::string("locally_bounded");
    }
  });
  m.def("chain", &make_chain, py::arg("scheme"), py::arg("mode") = "balanced",
        py::arg("depth") = 4);
  m.def("chain_valid", &chain_valid);
  m.def("nu", &ideal_nu, py::arg("scheme"), py::arg("expr"), py::arg("path"));
  m.def("is_radical", &ideal_radical, py::arg("scheme"), py::arg("expr"));
  m.def("topology_report", &topology_report, py::arg("scheme"), py::arg("cb_max") = 3);
  m.def("export_dot", &export_dot, py::arg("scheme"), py::arg("depth") = 3);
  m.def("verify_all", &verify_all, py::arg("seed") = 7);
}
