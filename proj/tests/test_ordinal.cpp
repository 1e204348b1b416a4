#include <doctest.h>

#include <random>
#include <vector>

#include "sptree/errors.hpp"
#include "sptree/ordinal.hpp"

using namespace sptree;

namespace {

// Independent order oracle for ordinals below w^3: w^2*a + w*b + c maps to
// a*N^2 + b*N + c, which is order-isomorphic for coefficients below N.
constexpr std::uint64_t kN = 1'000'000;

std::uint64_t encode(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return a * kN * kN + b * kN + c;
}

Ordinal make(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::vector<Ordinal::Term> terms;
  if (a) terms.push_back({2, a});
  if (b) terms.push_back({1, b});
  if (c) terms.push_back({0, c});
  return Ordinal::from_terms(std::move(terms));
}

std::vector<std::pair<Ordinal, std::uint64_t>> sample_below_w3() {
  std::vector<std::pair<Ordinal, std::uint64_t>> out;
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b)
      for (std::uint64_t c = 0; c <= 8; ++c)
        out.emplace_back(make(a, b, c), encode(a, b, c));
  return out;
}

}  // namespace

TEST_CASE("ordinal comparison matches the encoding oracle") {
  auto sample = sample_below_w3();
  REQUIRE(sample.size() >= 500);
  for (const auto& [x, ex] : sample)
    for (const auto& [y, ey] : sample) {
      auto got = x <=> y;
      auto want = ex <=> ey;
      CHECK_EQ(got < 0, want < 0);
      CHECK_EQ(got == 0, want == 0);
    }
}

TEST_CASE("ordinal comparison examples") {
  CHECK(Ordinal() == Ordinal());
  CHECK(Ordinal::omega(1, 3) > Ordinal::nat(1000000));
  CHECK(Ordinal::parse("w^1*2+1") > Ordinal::parse("w^1*2"));
}

TEST_CASE("classification") {
  CHECK(Ordinal().classify() == Ordinal::Kind::Zero);
  CHECK(Ordinal::parse("w^1*1+1").classify() == Ordinal::Kind::Successor);
  CHECK(Ordinal::parse("w^2*1").classify() == Ordinal::Kind::Limit);
}

TEST_CASE("successor") {
  CHECK(Ordinal().succ() == Ordinal::nat(1));
  CHECK(Ordinal::omega().succ() == Ordinal::parse("w^1*1+1"));
  CHECK(Ordinal::parse("w^1*2+4").succ() == Ordinal::parse("w^1*2+5"));

  auto sample = sample_below_w3();
  for (const auto& [x, ex] : sample) {
    CHECK(x.succ().classify() == Ordinal::Kind::Successor);
    // The encoding tracks +1 exactly.
    std::uint64_t a = ex / (kN * kN), b = (ex / kN) % kN, c = ex % kN;
    CHECK(x.succ() == make(a, b, c + 1));
  }
}

TEST_CASE("fundamental sequences") {
  CHECK(fundamental_seq(Ordinal::omega(), 3) == Ordinal::nat(3));
  CHECK(fundamental_seq(Ordinal::omega(1, 2), 4) == Ordinal::parse("w^1*1+4"));
  CHECK(fundamental_seq(Ordinal::omega(2), 2) == Ordinal::parse("w^1*2"));
  CHECK_THROWS_AS(fundamental_seq(Ordinal::nat(5), 1), input_error);

  std::vector<Ordinal> limits = {Ordinal::omega(), Ordinal::omega(1, 2),
                                 Ordinal::omega(2), Ordinal::parse("w^2*1+w^1*1"),
                                 Ordinal::omega(3)};
  for (const auto& limit : limits) {
    for (std::uint64_t n = 0; n < 12; ++n) {
      CHECK(fundamental_seq(limit, n) < fundamental_seq(limit, n + 1));
      CHECK(fundamental_seq(limit, n) < limit);
    }
  }
  // Cofinality: everything below the limit is dominated by some element.
  auto sample = sample_below_w3();
  for (const auto& limit : limits)
    for (const auto& [mu, enc] : sample) {
      if (!(mu < limit)) continue;
      bool dominated = false;
      for (std::uint64_t n = 0; n < 16 && !dominated; ++n)
        dominated = mu < fundamental_seq(limit, n);
      CHECK(dominated);
    }
}

TEST_CASE("limsup of closed sequence descriptors") {
  auto const2 = EventualOrdinalSeq::eventually_periodic({}, {Ordinal::nat(2)});
  CHECK(limsup_eventual(const2) == Ordinal::nat(2));

  auto eventually2 = EventualOrdinalSeq::eventually_periodic(
      {Ordinal::nat(1), Ordinal::nat(2), Ordinal::nat(1)}, {Ordinal::nat(2)});
  CHECK(limsup_eventual(eventually2) == Ordinal::nat(2));
  CHECK(eventually2.at(0) == Ordinal::nat(1));
  CHECK(eventually2.at(5) == Ordinal::nat(2));

  auto program = EventualOrdinalSeq::increasing({Ordinal::omega(), 1});
  CHECK(limsup_eventual(program) == Ordinal::omega());
  CHECK(program.at(3) == Ordinal::nat(4));  // fundamental_seq(w, 3) + 1

  auto periodic = EventualOrdinalSeq::eventually_periodic(
      {}, {Ordinal::nat(2), Ordinal::nat(3)});
  CHECK(limsup_eventual(periodic) == Ordinal::nat(3));

  // sup also sees the prefix; limsup does not.
  auto spiky = EventualOrdinalSeq::eventually_periodic({Ordinal::nat(9)},
                                                       {Ordinal::nat(2)});
  CHECK(limsup_eventual(spiky) == Ordinal::nat(2));
  CHECK(sup_eventual(spiky) == Ordinal::nat(9));

  CHECK_THROWS_AS(EventualOrdinalSeq::eventually_periodic({Ordinal::nat(1)}, {}),
                  input_error);
}

TEST_CASE("string grammar round trip") {
  CHECK(Ordinal::parse("w^2*1+w^1*3+2").str() == "w^2*1+w^1*3+2");
  CHECK(Ordinal::parse("0").str() == "0");
  CHECK(Ordinal::parse("17") == Ordinal::nat(17));
  CHECK(Ordinal::omega(2, 1).str() == "w^2*1");

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::uint64_t> coeff(0, 9);
  for (int i = 0; i < 200; ++i) {
    Ordinal o = make(coeff(rng), coeff(rng), coeff(rng));
    CHECK(Ordinal::parse(o.str()) == o);
  }

  CHECK_THROWS_AS(Ordinal::parse(""), input_error);
  CHECK_THROWS_AS(Ordinal::parse("w^1*0"), input_error);
  CHECK_THROWS_AS(Ordinal::parse("1+w^1*1"), input_error);  // increasing exponents
  CHECK_THROWS_AS(Ordinal::parse("w^0*1"), input_error);
  CHECK_THROWS_AS(Ordinal::parse("w^999*1"), bound_error);
  CHECK_THROWS_AS(Ordinal::parse("banana"), input_error);
}
