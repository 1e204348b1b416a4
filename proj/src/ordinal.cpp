#include "sptree/ordinal.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "sptree/errors.hpp"

namespace sptree {

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({0, n});
  return o;
}

Ordinal Ordinal::omega(std::uint32_t exponent, std::uint64_t coefficient) {
  return from_terms({{exponent, coefficient}});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw input_error("ordinal term with zero coefficient");
    if (terms[i].exponent > kMaxOrdinalExponent)
      throw bound_error("ordinal exponent exceeds configured bound");
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
      throw input_error("ordinal exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw input_error("ordinal is not finite: " + str());
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal::Kind Ordinal::classify() const {
  if (terms_.empty()) return Kind::Zero;
  return terms_.back().exponent == 0 ? Kind::Successor : Kind::Limit;
}

Ordinal Ordinal::succ() const {
  Ordinal o = *this;
  if (!o.terms_.empty() && o.terms_.back().exponent == 0) {
    if (o.terms_.back().coefficient == std::numeric_limits<std::uint64_t>::max())
      throw bound_error("ordinal coefficient overflow");
    ++o.terms_.back().coefficient;
  } else {
    o.terms_.push_back({0, 1});
  }
  return o;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  // Term-by-term comparison; with decreasing exponents the first differing
  // term decides, and a proper prefix is the smaller ordinal.
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent)
      return a.terms_[i].exponent <=> b.terms_[i].exponent;
    if (a.terms_[i].coefficient != b.terms_[i].coefficient)
      return a.terms_[i].coefficient <=> b.terms_[i].coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += '+';
    if (terms_[i].exponent == 0) {
      out += std::to_string(terms_[i].coefficient);
    } else {
      out += "w^";
      out += std::to_string(terms_[i].exponent);
      out += '*';
      out += std::to_string(terms_[i].coefficient);
    }
  }
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw input_error("invalid " + std::string(what) + " in ordinal: '" +
                      std::string(text) + "'");
  return value;
}

}  // namespace

Ordinal Ordinal::parse(std::string_view text) {
  if (text.empty()) throw input_error("empty ordinal string");
  if (text == "0") return Ordinal();
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    std::string_view tok = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (tok.empty()) throw input_error("empty term in ordinal: '" + std::string(text) + "'");
    Term t;
    if (tok.starts_with("w^")) {
      std::size_t star = tok.find('*');
      if (star == std::string_view::npos)
        throw input_error("ordinal term missing '*': '" + std::string(tok) + "'");
      std::uint64_t e = parse_u64(tok.substr(2, star - 2), "exponent");
      if (e == 0)
        throw input_error("constant terms are written bare, not as w^0");
      if (e > kMaxOrdinalExponent)
        throw bound_error("ordinal exponent out of range: '" + std::string(tok) + "'");
      t.exponent = static_cast<std::uint32_t>(e);
      t.coefficient = parse_u64(tok.substr(star + 1), "coefficient");
    } else {
      t.exponent = 0;
      t.coefficient = parse_u64(tok, "coefficient");
    }
    terms.push_back(t);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return from_terms(std::move(terms));  // validates ordering and coefficients
}

Ordinal fundamental_seq(const Ordinal& limit, std::uint64_t n) {
  if (!limit.is_limit())
    throw input_error("fundamental_seq requires a limit ordinal, got " + limit.str());
  std::vector<Ordinal::Term> terms = limit.terms();
  Ordinal::Term last = terms.back();
  terms.pop_back();
  if (last.coefficient >= 2) terms.push_back({last.exponent, last.coefficient - 1});
  if (n > 0) terms.push_back({last.exponent - 1, n});
  return Ordinal::from_terms(std::move(terms));
}

EventualOrdinalSeq EventualOrdinalSeq::eventually_periodic(std::vector<Ordinal> prefix,
                                                           std::vector<Ordinal> cycle) {
  EventualOrdinalSeq s;
  s.prefix = std::move(prefix);
  s.cycle = std::move(cycle);
  s.validate();
  return s;
}

EventualOrdinalSeq EventualOrdinalSeq::increasing(FundamentalProgram program) {
  EventualOrdinalSeq s;
  s.program = std::move(program);
  s.validate();
  return s;
}

void EventualOrdinalSeq::validate() const {
  if (program.has_value()) {
    if (!cycle.empty())
      throw input_error("ordinal sequence cannot be both periodic and a program");
    if (!program->limit.is_limit())
      throw input_error("sequence program requires a limit ordinal");
  } else if (cycle.empty()) {
    throw input_error("ordinal sequence descriptor has no tail");
  }
}

Ordinal EventualOrdinalSeq::at(std::uint64_t n) const {
  validate();
  if (n < prefix.size()) return prefix[n];
  std::uint64_t k = n - prefix.size();
  if (!cycle.empty()) return cycle[k % cycle.size()];
  Ordinal g = fundamental_seq(program->limit, k);
  for (std::uint64_t i = 0; i < program->plus; ++i) g = g.succ();
  return g;
}

Ordinal limsup_eventual(const EventualOrdinalSeq& seq) {
  seq.validate();
  if (!seq.cycle.empty()) return *std::max_element(seq.cycle.begin(), seq.cycle.end());
  // Strictly increasing with finite shift: the limsup is the program's limit.
  return seq.program->limit;
}

Ordinal sup_eventual(const EventualOrdinalSeq& seq) {
  Ordinal s = limsup_eventual(seq);
  for (const Ordinal& p : seq.prefix) s = std::max(s, p);
  return s;
}

}  // namespace sptree
