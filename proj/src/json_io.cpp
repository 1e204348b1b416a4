#include "sptree/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "sptree/errors.hpp"

namespace sptree {

using nlohmann::json;

nlohmann::json scheme_to_json(const TreeScheme& scheme) {
  json j;
  j["kinds"] = scheme.kinds;
  j["root"] = scheme.kinds[scheme.root];
  json succ = json::object();
  for (std::size_t k = 0; k < scheme.kinds.size(); ++k) {
    json edges = json::array();
    for (const auto& e : scheme.succ[k])
      edges.push_back(json::array({scheme.kinds[e.child], e.weight}));
    succ[scheme.kinds[k]] = std::move(edges);
  }
  j["succ"] = std::move(succ);
  if (!scheme.meta.empty()) j["meta"] = json::parse(scheme.meta);
  return j;
}

TreeScheme scheme_from_json(const json& j) {
  try {
    TreeScheme s;
    s.kinds = j.at("kinds").get<std::vector<std::string>>();
    std::string root = j.at("root").get<std::string>();
    s.root = s.kind_index(root);
    if (s.root < 0) throw input_error("scheme root '" + root + "' not in kinds");
    s.succ.resize(s.kinds.size());
    for (const auto& [kind, edges] : j.at("succ").items()) {
      int k = s.kind_index(kind);
      if (k < 0) throw input_error("successor list for unknown kind '" + kind + "'");
      for (const auto& e : edges) {
        int child = s.kind_index(e.at(0).get<std::string>());
        if (child < 0) throw input_error("edge to unknown kind in '" + kind + "'");
        s.succ[k].push_back({child, e.at(1).get<std::int64_t>()});
      }
    }
    if (j.contains("meta")) s.meta = j.at("meta").dump();
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed scheme JSON: ") + e.what());
  }
}

json term_to_json(const ConstructionTerm& term) {
  json j;
  if (term.op == ConstructionTerm::Op::Base) {
    j["op"] = "base";
    j["variant"] = term.variant.str();
    return j;
  }
  j["op"] = "graft";
  j["weight"] = term.branch_weight;
  if (term.periodic_args()) {
    json args = json::array();
    for (const auto& sub : term.periodic) args.push_back(term_to_json(sub));
    j["periodic"] = std::move(args);
  } else {
    j["limit"] = term.program_limit->str();
    j["variant"] = term.variant.str();
  }
  return j;
}

ConstructionTerm term_from_json(const json& j) {
  try {
    ConstructionTerm term;
    std::string op = j.at("op").get<std::string>();
    if (op == "base") {
      term.op = ConstructionTerm::Op::Base;
      term.variant = FamilyVariant::parse(j.at("variant").get<std::string>());
      return term;
    }
    if (op != "graft") throw input_error("unknown construction op '" + op + "'");
    term.op = ConstructionTerm::Op::Graft;
    term.branch_weight = j.at("weight").get<int>();
    if (j.contains("periodic")) {
      for (const auto& sub : j.at("periodic")) term.periodic.push_back(term_from_json(sub));
      if (term.periodic.empty()) throw input_error("empty periodic argument list");
    } else {
      term.program_limit = Ordinal::parse(j.at("limit").get<std::string>());
      term.variant = FamilyVariant::parse(j.at("variant").get<std::string>());
    }
    return term;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed construction term: ") + e.what());
  }
}

std::string make_meta(const ConstructionTerm& term) {
  json meta;
  meta["construction"] = term_to_json(term);
  // Recorded so serialized trees pin down which increasing sequences the
  // builder used at limit ranks.
  meta["fundamental_sequence"] = "canonical";
  return meta.dump();
}

json chain_to_json(const ValuationChain& chain) {
  json j;
  j["base"] = chain.root_tags;
  json steps = json::array();
  for (std::size_t s = 0; s < chain.steps.size(); ++s) {
    json step;
    step["degree"] = chain.steps[s].degree;
    json presc = json::object();
    for (const auto& [node, ef] : chain.steps[s].prescriptions) {
      json list = json::array();
      for (const auto& [e, f] : ef) list.push_back(json::array({e, f}));
      presc[chain.node_id(node)] = std::move(list);
    }
    step["prescriptions"] = std::move(presc);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

ValuationChain chain_from_json(const json& j) {
  try {
    ValuationChain chain;
    chain.root_tags = j.at("base").get<std::vector<std::string>>();
    if (chain.root_tags.empty()) throw input_error("chain has no roots");

    std::map<std::string, int> ids;
    chain.level_index.emplace_back();
    for (std::size_t r = 0; r < chain.root_tags.size(); ++r) {
      ChainNode root;
      root.root = static_cast<int>(r);
      ids[chain.root_tags[r]] = static_cast<int>(chain.nodes.size());
      chain.level_index[0].push_back(static_cast<int>(chain.nodes.size()));
      chain.nodes.push_back(std::move(root));
    }

    int level = 0;
    for (const auto& step_json : j.at("steps")) {
      ++level;
      ExtensionStep step;
      step.degree = step_json.at("degree").get<std::int64_t>();
      std::vector<int> next_level;
      // Deterministic node order: sort prescriptions by (root, address).
      std::vector<std::pair<int, json>> entries;
      for (const auto& [id, ef] : step_json.at("prescriptions").items()) {
        auto it = ids.find(id);
        if (it == ids.end())
          throw input_error("prescription for unknown node '" + id + "'");
        entries.emplace_back(it->second, ef);
      }
      std::sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
        const ChainNode& na = chain.nodes[a.first];
        const ChainNode& nb = chain.nodes[b.first];
        return std::tie(na.root, na.address) < std::tie(nb.root, nb.address);
      });
      for (const auto& [node, ef_json] : entries) {
        const ChainNode parent = chain.nodes[node];
        if (parent.level != level - 1)
          throw input_error("prescription for node of wrong level");
        std::vector<std::pair<std::int64_t, std::int64_t>> ef;
        int index = 0;
        for (const auto& pair : ef_json) {
          std::int64_t e = pair.at(0).get<std::int64_t>();
          std::int64_t f = pair.at(1).get<std::int64_t>();
          ef.emplace_back(e, f);
          ChainNode child;
          child.level = level;
          child.parent = node;
          child.e_step = e;
          child.f_step = f;
          child.e_acc = parent.e_acc * e;
          child.f_acc = parent.f_acc * f;
          child.root = parent.root;
          child.address = parent.address;
          child.address.push_back(index++);
          int id = static_cast<int>(chain.nodes.size());
          next_level.push_back(id);
          chain.nodes.push_back(std::move(child));
          ids[chain.node_id(id)] = id;
        }
        step.prescriptions.emplace_back(node, std::move(ef));
      }
      chain.steps.push_back(std::move(step));
      chain.level_index.push_back(std::move(next_level));
    }
    return chain;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed chain JSON: ") + e.what());
  }
}

json unfolded_to_json(const UnfoldedTree& tree) {
  json nodes = json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    json n;
    n["address"] = address_str(tree.nodes[i].address);
    n["label"] = tree.nodes[i].label;
    json edges = json::array();
    for (int child : tree.children[i])
      edges.push_back(json::array(
          {address_str(tree.nodes[child].address), tree.nodes[child].weight}));
    n["edges"] = std::move(edges);
    nodes.push_back(std::move(n));
  }
  json j;
  j["nodes"] = std::move(nodes);
  return j;
}

std::string to_dot(const UnfoldedTree& tree) {
  std::string out = "digraph tree {\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    std::string addr = address_str(tree.nodes[i].address);
    out += "  \"" + addr + "\" [label=\"" + tree.nodes[i].label + "@" + addr + "\"];\n";
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    for (int child : tree.children[i])
      out += "  \"" + address_str(tree.nodes[i].address) + "\" -> \"" +
             address_str(tree.nodes[child].address) + "\" [label=\"" +
             std::to_string(tree.nodes[child].weight) + "\"];\n";
  out += "}\n";
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw input_error("invalid JSON in '" + path + "': " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw io_error("write failed for '" + path + "'");
}

}  // namespace sptree
