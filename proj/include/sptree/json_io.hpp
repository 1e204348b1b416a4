#pragma once

#include <string>

#include <json.hpp>

#include "sptree/combinators.hpp"
#include "sptree/tree.hpp"
#include "sptree/valuation.hpp"

namespace sptree {

// Scheme files: {"kinds": [...], "root": "...", "succ": {kind: [[kind, w], ...]},
// "meta": {...}?}. The meta object carries the construction term and the
// fundamental-sequence policy for trees produced by the builder.
nlohmann::json scheme_to_json(const TreeScheme& scheme);
TreeScheme scheme_from_json(const nlohmann::json& j);

nlohmann::json term_to_json(const ConstructionTerm& term);
ConstructionTerm term_from_json(const nlohmann::json& j);

/// Packs the construction metadata recorded in serialized schemes.
std::string make_meta(const ConstructionTerm& term);

// Chain files: {"base": [...], "steps": [{"degree": n,
// "prescriptions": {node_id: [[e, f], ...]}}]}.
nlohmann::json chain_to_json(const ValuationChain& chain);
ValuationChain chain_from_json(const nlohmann::json& j);

nlohmann::json unfolded_to_json(const UnfoldedTree& tree);

/// DOT export with nodes labelled "kind@address" and edges by weight.
std::string to_dot(const UnfoldedTree& tree);

nlohmann::json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace sptree
