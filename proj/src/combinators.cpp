#include "sptree/combinators.hpp"

#include <deque>

#include "sptree/errors.hpp"

namespace sptree {

TreeScheme FamilyVariant::base_scheme() const {
  TreeScheme s;
  s.kinds = {"r"};
  s.root = 0;
  int edges = tag == Tag::Countable ? 1 : (tag == Tag::Balanced3 ? 3 : n);
  s.succ.push_back(std::vector<SchemeEdge>(static_cast<std::size_t>(edges), {0, 1}));
  s.validate();
  return s;
}

std::string FamilyVariant::str() const {
  switch (tag) {
    case Tag::Balanced3:
      return "balanced3";
    case Tag::Countable:
      return "countable";
    case Tag::BalancedN:
      return "balanced" + std::to_string(n);
  }
  return "?";
}

FamilyVariant FamilyVariant::parse(std::string_view text) {
  if (text == "balanced3") return {Tag::Balanced3, 3};
  if (text == "countable") return {Tag::Countable, 3};
  if (text.starts_with("balanced")) {
    int n = 0;
    for (char c : text.substr(8)) {
      if (c < '0' || c > '9') throw input_error("unknown variant '" + std::string(text) + "'");
      n = n * 10 + (c - '0');
    }
    if (n < 3) throw input_error("balanced variant requires n >= 3");
    if (n == 3) return {Tag::Balanced3, 3};
    return {Tag::BalancedN, n};
  }
  throw input_error("unknown variant '" + std::string(text) + "'");
}

GraftScheme spine_graft(const std::vector<TreeScheme>& periodic_args, int branch_weight) {
  if (periodic_args.empty()) throw input_error("spine graft needs at least one argument");
  if (branch_weight < 1) throw input_error("branch weight must be >= 1");
  for (const auto& arg : periodic_args) arg.validate();

  GraftScheme out;
  out.period = static_cast<int>(periodic_args.size());
  out.branch_weight = branch_weight;
  out.args = periodic_args;

  TreeScheme& s = out.scheme;
  int p = out.period;
  for (int i = 0; i < p; ++i) s.kinds.push_back("x" + std::to_string(i));
  std::vector<int> arg_base(p);
  for (int j = 0; j < p; ++j) {
    arg_base[j] = static_cast<int>(s.kinds.size());
    std::string prefix = "t" + std::to_string(j + 1) + ".";
    for (const auto& kind : periodic_args[j].kinds) s.kinds.push_back(prefix + kind);
  }
  s.root = 0;
  s.succ.resize(s.kinds.size());
  for (int i = 0; i < p; ++i) {
    s.succ[i].push_back({(i + 1) % p, 1});
    s.succ[i].push_back({arg_base[i] + periodic_args[i].root, branch_weight});
  }
  for (int j = 0; j < p; ++j) {
    const TreeScheme& arg = periodic_args[j];
    for (std::size_t k = 0; k < arg.kinds.size(); ++k)
      for (const auto& e : arg.succ[k])
        s.succ[arg_base[j] + k].push_back({arg_base[j] + e.child, e.weight});
  }
  s.validate();
  return out;
}

BuiltTree::BuiltTree(ConstructionTerm term, std::optional<TreeScheme> scheme,
                     std::optional<GraftScheme> graft)
    : term_(std::move(term)), scheme_(std::move(scheme)), graft_(std::move(graft)) {}

const TreeScheme& BuiltTree::scheme() const {
  if (!scheme_) throw input_error("tree has no finite presentation");
  return *scheme_;
}

const GraftScheme& BuiltTree::graft() const {
  if (!graft_) throw input_error("tree is not a spine graft");
  return *graft_;
}

std::shared_ptr<BuiltTree> BuiltTree::program_arg(const ConstructionTerm& term,
                                                  std::uint64_t index) const {
  std::pair<std::string, std::uint64_t> key{
      term.program_limit->str() + "/" + term.variant.str() + "/" +
          std::to_string(term.branch_weight),
      index};
  std::lock_guard lock(memo_->mutex);
  auto it = memo_->trees.find(key);
  if (it != memo_->trees.end()) return it->second;
  Ordinal rank = fundamental_seq(*term.program_limit, index - 1).succ();
  auto tree = std::make_shared<BuiltTree>(build_rank_tree(rank, term.variant));
  memo_->trees[key] = tree;
  return tree;
}

BuiltTree::NodeInfo BuiltTree::interpret(const ConstructionTerm& term,
                                         const Address& address, std::size_t offset,
                                         const std::string& label_prefix) const {
  if (term.op == ConstructionTerm::Op::Base) {
    int edges = term.variant.tag == FamilyVariant::Tag::Countable
                    ? 1
                    : (term.variant.tag == FamilyVariant::Tag::Balanced3 ? 3
                                                                         : term.variant.n);
    for (std::size_t i = offset; i < address.size(); ++i)
      if (address[i] < 0 || address[i] >= edges)
        throw input_error("address step out of range in base tree");
    return {label_prefix + "r",
            std::vector<std::int64_t>(static_cast<std::size_t>(edges), 1)};
  }

  std::uint64_t pos = 0;  // spine position
  for (std::size_t i = offset; i < address.size(); ++i) {
    if (address[i] == 0) {
      ++pos;
    } else if (address[i] == 1) {
      std::uint64_t n = pos + 1;  // 1-based argument index
      if (term.periodic_args()) {
        std::size_t slot = static_cast<std::size_t>((n - 1) % term.periodic.size());
        return interpret(term.periodic[slot], address, i + 1,
                         label_prefix + "t" + std::to_string(slot + 1) + ".");
      }
      auto arg = program_arg(term, n);
      return arg->interpret(arg->term_, address, i + 1,
                            label_prefix + "t" + std::to_string(n) + ".");
    } else {
      throw input_error("address step out of range on spine");
    }
  }
  return {label_prefix + "x" + std::to_string(pos),
          {1, static_cast<std::int64_t>(term.branch_weight)}};
}

BuiltTree::NodeInfo BuiltTree::node(const Address& address) const {
  return interpret(term_, address, 0, "");
}

UnfoldedTree BuiltTree::unfold_lazy(int depth) const {
  if (depth < 0) throw input_error("negative unfold depth");
  UnfoldedTree tree;
  tree.nodes.push_back({-1, 0, node({}).label, {}});
  tree.children.emplace_back();
  struct Item {
    int node;
    int depth;
  };
  std::deque<Item> queue{{0, 0}};
  while (!queue.empty()) {
    auto [id, d] = queue.front();
    queue.pop_front();
    if (d == depth) continue;
    NodeInfo info = node(tree.nodes[id].address);
    for (std::size_t i = 0; i < info.edge_weights.size(); ++i) {
      Address addr = tree.nodes[id].address;
      addr.push_back(static_cast<int>(i));
      int child = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({id, info.edge_weights[i], node(addr).label, std::move(addr)});
      tree.children.emplace_back();
      tree.children[id].push_back(child);
      queue.push_back({child, d + 1});
    }
  }
  return tree;
}

BuiltTree build_rank_tree(const Ordinal& alpha, FamilyVariant variant) {
  if (alpha.is_zero()) throw input_error("tree rank must be >= 1");
  if (alpha.is_limit())
    throw input_error(
        "the family is defined at successor ranks only; limit ranks arise "
        "as suprema over forests");

  if (alpha == Ordinal::nat(1)) {
    ConstructionTerm term;
    term.op = ConstructionTerm::Op::Base;
    term.variant = variant;
    return BuiltTree(std::move(term), variant.base_scheme(), std::nullopt);
  }

  // alpha = beta + 1 with beta >= 1.
  std::vector<Ordinal::Term> terms = alpha.terms();
  if (terms.back().coefficient == 1)
    terms.pop_back();
  else
    --terms.back().coefficient;
  Ordinal beta = Ordinal::from_terms(std::move(terms));

  ConstructionTerm term;
  term.op = ConstructionTerm::Op::Graft;
  term.variant = variant;
  term.branch_weight = variant.branch_weight();

  if (beta.is_limit()) {
    term.program_limit = beta;
    return BuiltTree(std::move(term), std::nullopt, std::nullopt);
  }

  BuiltTree sub = build_rank_tree(beta, variant);
  term.periodic.push_back(sub.term());
  if (sub.lazy()) return BuiltTree(std::move(term), std::nullopt, std::nullopt);
  GraftScheme graft = spine_graft({sub.scheme()}, variant.branch_weight());
  TreeScheme scheme = graft.scheme;
  return BuiltTree(std::move(term), std::move(scheme), std::move(graft));
}

PathDescriptor embed_path(const GraftScheme& graft, int arg_index,
                          const PathDescriptor& inner) {
  if (arg_index < 1) throw input_error("argument index must be >= 1");
  if (!inner.anchor.empty() || !inner.infinite())
    throw input_error("embedded path must be maximal in its argument tree");
  const TreeScheme& arg = graft.args[(arg_index - 1) % graft.period];
  validate_path(arg, inner);

  PathDescriptor out;
  out.prefix.assign(static_cast<std::size_t>(arg_index - 1), 0);  // spine steps
  out.prefix.push_back(1);                                        // branch edge
  out.prefix.insert(out.prefix.end(), inner.prefix.begin(), inner.prefix.end());
  out.cycle = inner.cycle;
  validate_path(graft.scheme, out);
  return out;
}

}  // namespace sptree
