#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kni/errors.hpp"
#include "kni/exact/cycnum.hpp"
#include "kni/exact/poly.hpp"
#include "kni/exact/ratfn.hpp"
#include "kni/exact/roots.hpp"

using namespace kni::exact;

namespace {

CycNum random_cyc(std::mt19937_64& rng, int span = 7) {
  std::uniform_int_distribution<long> num(-span, span), den(1, 5);
  std::array<Rational, 8> c;
  for (auto& q : c) {
    q = Rational(Integer(num(rng)), Integer(den(rng)));
    q.canonicalize();
  }
  return CycNum(c);
}

Poly random_poly(std::mt19937_64& rng, int deg) {
  std::vector<CycNum> c;
  for (int k = 0; k <= deg; ++k) c.push_back(random_cyc(rng, 3));
  if (c.back().is_zero()) c.back() = CycNum(1);
  return Poly(c);
}

RatFn random_ratfn(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  Poly den = random_poly(rng, d(rng));
  return RatFn(random_poly(rng, d(rng)), den);
}

}  // namespace

TEST_CASE("distinguished constants") {
  const CycNum z = CycNum::zeta();
  CHECK((z * z * z - z.pow(5) + z).pow(2) == CycNum(2));
  CHECK(CycNum::sqrt2() * CycNum::sqrt2() == CycNum(2));
  CHECK((CycNum(2) * z.pow(4) - CycNum(1)).pow(2) == CycNum(-3));
  CHECK(CycNum::i() * CycNum::i() == CycNum(-1));
  CHECK(CycNum::sqrt3().pow(2) == CycNum(3));
  CHECK(CycNum::sqrt_i().pow(2) == CycNum::i());
  CHECK(z.pow(24) == CycNum(1));
  CHECK(z.pow(12) == CycNum(-1));
  CHECK(CycNum::i_sqrt3() == CycNum::i() * CycNum::sqrt3());
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(12345);
  for (int n = 0; n < 1000; ++n) {
    const CycNum a = random_cyc(rng);
    if (a.is_zero()) continue;
    CHECK((a * a.inverse()).is_one());
  }
  for (int n = 0; n < 200; ++n) {
    const CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == CycNum(0));
  }
}

TEST_CASE("inverse of zero raises") {
  CHECK_THROWS_AS(CycNum(0).inverse(), kni::DivisionByZero);
}

TEST_CASE("galois action is a ring map and conj matches complex conjugation") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const CycNum a = random_cyc(rng), b = random_cyc(rng);
    for (int k : {5, 7, 11, 13, 17, 19, 23}) {
      CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
      CHECK((a + b).galois(k) == a.galois(k) + b.galois(k));
    }
    const auto za = a.to_complex(), zc = a.conj().to_complex();
    CHECK(std::abs(std::conj(za) - zc) < 1e-9 * (1 + std::abs(za)));
  }
  CHECK(CycNum::sqrt2().galois(5) == -CycNum::sqrt2());
  CHECK(CycNum::i().galois(23) == -CycNum::i());
}

TEST_CASE("canonical text round trip") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 200; ++n) {
    const CycNum a = random_cyc(rng);
    CHECK(CycNum::parse(a.str()) == a);
    CHECK(CycNum::parse_expression(a.pretty()) == a);
  }
  CHECK(CycNum::parse_expression("5/2-(1/2)i√3") ==
        CycNum(Rational(5, 2)) - CycNum(Rational(1, 2)) * CycNum::i_sqrt3());
  CHECK_THROWS_AS(CycNum::parse("1/2,3"), kni::ParseError);
}

TEST_CASE("polynomial division and gcd") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const Poly a = random_poly(rng, 4), b = random_poly(rng, 2);
    const auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    const Poly g = random_poly(rng, 1).monic();
    CHECK(gcd(a * g, b * g).divmod(g).second.is_zero());
  }
  CHECK(Poly::parse(Poly::x().str()) == Poly::x());
}

TEST_CASE("rational function derivation") {
  const RatFn x = RatFn::var();
  // d/dx (1/x) = -1/x^2
  CHECK(x.inverse().derivative() == -(x * x).inverse());
  // (1/(2w)) d/dw applied to w^2 gives 1
  CHECK((x * x).derive(Chart::w()) == RatFn(1));
  // (1/(2w)) d/dw of (w^2 - i)/w
  const RatFn f = (x * x - RatFn(CycNum::i())) / x;
  const RatFn expected = (x * x + RatFn(CycNum::i())) / (RatFn(2) * x.pow(3));
  CHECK(f.derive(Chart::w()) == expected);
}

TEST_CASE("Leibniz rule and chart compatibility") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 40; ++n) {
    const RatFn f = random_ratfn(rng), g = random_ratfn(rng);
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    CHECK((f * g).derive(Chart::w()) == f.derive(Chart::w()) * g + f * g.derive(Chart::w()));
    // d/dx1 on f(x1) equals (1/(2w)) d/dw on f(w^2)
    CHECK(f.derivative().even_embed() == f.even_embed().derive(Chart::w()));
  }
}

TEST_CASE("rational function text round trip") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 30; ++n) {
    const RatFn f = random_ratfn(rng);
    CHECK(RatFn::parse(f.str()) == f);
  }
  CHECK_THROWS_AS(RatFn::parse("[1] ÷ [0]"), kni::ParseError);
  CHECK_THROWS_AS(RatFn::parse("[1;2]"), kni::ParseError);
}

TEST_CASE("roots in the cyclotomic field") {
  const Poly x = Poly::x();
  // x^2 + 2 has roots +-i sqrt2
  auto r = roots_in_field(x * x + Poly(2));
  REQUIRE(r.size() == 2);
  for (const auto& fr : r) CHECK(fr.value * fr.value == CycNum(-2));
  // (x - sqrt3)^2 (x - zeta^5)
  const Poly p = (x - Poly(CycNum::sqrt3())) * (x - Poly(CycNum::sqrt3())) * (x - Poly(CycNum::zeta(5)));
  r = roots_in_field(p);
  REQUIRE(r.size() == 2);
  for (const auto& fr : r) {
    if (fr.value == CycNum::sqrt3()) CHECK(fr.multiplicity == 2);
    else CHECK((fr.value == CycNum::zeta(5) && fr.multiplicity == 1));
  }
  // x^2 - 5 has no root in the field
  CHECK(roots_in_field(x * x - Poly(5)).empty());
  // x^4 + 1 splits
  CHECK(roots_in_field(x * x * x * x + Poly(1)).size() == 4);
}
