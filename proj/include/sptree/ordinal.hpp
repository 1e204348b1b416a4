#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sptree {

/// Largest admissible exponent in a Cantor normal form term. Everything the
/// engine builds stays far below w^w; the cap keeps parsed input sane.
inline constexpr std::uint32_t kMaxOrdinalExponent = 64;

/// Countable ordinal below w^w in Cantor normal form: a finite sum of terms
/// w^e * c with strictly decreasing exponents and coefficients >= 1. The
/// empty sum is 0.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent = 0;
    std::uint64_t coefficient = 0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  enum class Kind { Zero, Successor, Limit };

  Ordinal() = default;  // zero

  static Ordinal nat(std::uint64_t n);
  static Ordinal omega(std::uint32_t exponent = 1, std::uint64_t coefficient = 1);
  /// Builds from explicit terms; validates the normal-form invariants.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Value of a finite ordinal; throws input_error otherwise.
  std::uint64_t finite_value() const;

  Kind classify() const;
  bool is_limit() const { return classify() == Kind::Limit; }
  bool is_successor() const { return classify() == Kind::Successor; }

  Ordinal succ() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal&, const Ordinal&) = default;

  /// Serialization grammar: "0", or '+'-joined terms where a term is either
  /// "w^E*C" (E >= 1) or a bare constant "C", e.g. "w^2*1+w^1*3+2".
  std::string str() const;
  static Ordinal parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

/// Canonical fundamental sequence of a limit ordinal: the strictly increasing
/// g_0 < g_1 < ... with sup_n g_n = limit. For limits ending in w^(k+1) the
/// sequence appends w^k*n; for limits ending in w^k*c (c >= 2) it keeps
/// w^k*(c-1) and recurses on w^k.
Ordinal fundamental_seq(const Ordinal& limit, std::uint64_t n);

/// Strictly increasing sequence given as a fundamental-sequence program:
/// n -> fundamental_seq(limit, n) + plus. Its supremum is `limit`.
struct FundamentalProgram {
  Ordinal limit;
  std::uint64_t plus = 0;
};

/// Closed descriptor of an ordinal sequence with computable limsup: either
/// eventually periodic (prefix then cycle repeated forever; a constant
/// sequence is a cycle of length one) or a strictly increasing
/// fundamental-sequence program.
struct EventualOrdinalSeq {
  std::vector<Ordinal> prefix;
  std::vector<Ordinal> cycle;
  std::optional<FundamentalProgram> program;

  static EventualOrdinalSeq eventually_periodic(std::vector<Ordinal> prefix,
                                                std::vector<Ordinal> cycle);
  static EventualOrdinalSeq increasing(FundamentalProgram program);

  /// n-th element of the described sequence.
  Ordinal at(std::uint64_t n) const;
  void validate() const;
};

Ordinal limsup_eventual(const EventualOrdinalSeq& seq);
/// Supremum of all elements (limsup plus the finite prefix).
Ordinal sup_eventual(const EventualOrdinalSeq& seq);

}  // namespace sptree
