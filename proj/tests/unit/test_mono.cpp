#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "kni/mono/monodromy.hpp"
#include "kni/ops/fixtures.hpp"
#include "kni/ops/local.hpp"

using namespace kni::mono;
using kni::exact::Chart;
using kni::exact::CycNum;
using kni::exact::RatFn;
using kni::exact::Rational;
using kni::ops::DiffOp;

namespace {

const RatFn x = RatFn::var();
const double kPi = std::numbers::pi;

DiffOp power_op(const Rational& s) {
  // D - s/x, solution x^s
  return DiffOp(Chart::x1(), {-RatFn(CycNum(s)) / x, RatFn(1)});
}

double dist(const CMat& a, const CMat& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

const DiffOp& hyp() {
  static const DiffOp l = kni::ops::printed_order4_operator(kni::ops::LastDenominator::ReadWithI);
  return l;
}

}  // namespace

TEST_CASE("companion systems") {
  const auto s = LinearSystem::companion(DiffOp(Chart::x1(), {RatFn(1), RatFn(0), RatFn(1)}));
  const CMat a = s.eval(cd(0.3, 0.2));
  CHECK(a(0, 0) == cd(0));
  CHECK(a(0, 1) == cd(1));
  CHECK(a(1, 0) == cd(-1));
  CHECK(a(1, 1) == cd(0));
  const auto h = LinearSystem::companion(hyp());
  CHECK(h.n() == 4);
  CHECK(h.eval(cd(1, 0))(3, 0) == -hyp().coeff(0).eval(cd(1, 0)));
  CHECK_THROWS_AS(h.eval(cd(0, 1)), kni::SingularEvaluation);
}

TEST_CASE("x^(1/3) around the origin") {
  const auto s = LinearSystem::companion(power_op(Rational(1, 3)));
  const auto m = continue_along(s, square_loop(cd(1), cd(0), 0.5, "0"), 1e-10);
  CHECK(m.accepted);
  CHECK(std::abs(m.m(0, 0) - std::exp(cd(0, 2 * kPi / 3))) < 1e-10);
}

TEST_CASE("contractible loop and homotopy invariance") {
  const auto s = LinearSystem::companion(hyp());
  const double tol = 1e-8;
  const auto none = continue_along(s, square_loop(cd(1), cd(2.5, 0.5), 0.5, "empty"), tol);
  CHECK(none.accepted);
  CHECK(dist(none.m, CMat::Identity(4, 4)) < 1e-6);
  CHECK(std::abs(none.m.determinant() - 1.0) < tol * 10);
  const auto a = continue_along(s, square_loop(cd(1), cd(0), 0.4, "a"), tol);
  const auto b = continue_along(s, square_loop(cd(1), cd(0), 0.25, "b"), tol);
  CHECK(dist(a.m, b.m) < 10 * tol);
}

TEST_CASE("loop eigenvalues follow the indicial exponents") {
  const auto s = LinearSystem::companion(hyp());
  for (const cd p : {cd(0), cd(0, 1)}) {
    const auto m = continue_along(s, square_loop(cd(1), p, 0.4, "p"), 1e-8);
    REQUIRE(m.accepted);
    const auto ind = kni::ops::indicial_data(hyp(), kni::ops::Point::at(p == cd(0) ? CycNum(0) : CycNum::i()));
    CHECK(eigenvalue_mismatch(eigenvalues(m.m), exponent_eigenvalues(ind.exponents)) < 1e-6);
    cd sum = 0;
    for (const auto& e : ind.exponents) sum += double(e.multiplicity) * e.numeric;
    const cd want = std::exp(2 * kPi * cd(0, 1) * sum);
    CHECK(std::abs(m.m.determinant() - want) < 1e-6 * std::abs(want));
  }
}

TEST_CASE("hypergeometric loops") {
  const CycNum a(Rational(1, 3)), b(Rational(1, 4)), c(Rational(2, 5));
  const auto s = LinearSystem::companion(kni::ops::hypergeometric_operator(a, b, c));
  const auto set = loop_set({cd(0), cd(1)}, cd(0.5, -0.5));
  const auto ms = continue_all(s, set.generators, 1e-8);
  const auto ev = hg_local_eigenvalues({a, b, c});
  for (int k = 0; k < 2; ++k) {
    REQUIRE(ms[static_cast<std::size_t>(k)].accepted);
    CHECK(eigenvalue_mismatch(eigenvalues(ms[static_cast<std::size_t>(k)].m),
                              {ev[static_cast<std::size_t>(k)][0], ev[static_cast<std::size_t>(k)][1]}) < 1e-6);
  }
  const auto inf = continue_along(s, set.infinity, 1e-8);
  CHECK(eigenvalue_mismatch(eigenvalues(inf.m), {ev[2][0], ev[2][1]}) < 1e-6);
  const auto g = group_tests({ms[0].m, ms[1].m});
  CHECK(g.max_defect > 0.1);
  CHECK_FALSE(g.common_eigenvector);
}

TEST_CASE("loop set relations") {
  const auto s = LinearSystem::companion(hyp());
  const auto set = loop_set({cd(0), cd(0, 1)}, cd(1));
  CHECK(set.generators.size() == 2);
  for (const auto& l : set.generators) CHECK(check_clearance(l, {cd(0), cd(0, 1)}).empty());
  const auto comp = continue_along(s, set.composite, 1e-8);
  CHECK(comp.accepted);
  CHECK((comp.m - CMat::Identity(4, 4)).norm() / comp.scale < 1e-6);
  const auto ms = continue_all(s, set.generators, 1e-8);
  const auto inf = continue_along(s, set.infinity, 1e-8);
  CMat prod = CMat::Identity(4, 4);
  for (int k : set.sweep_order) prod = ms[static_cast<std::size_t>(k)].m * prod;
  CHECK(dist(prod, inf.m.inverse()) < 10 * 1e-8 * std::max(1.0, inf.m.inverse().norm()));

  const auto p = LinearSystem::companion(power_op(Rational(2, 7)));
  const auto one = loop_set({cd(0)}, cd(1));
  const auto m0 = continue_along(p, one.generators[0], 1e-8);
  const auto minf = continue_along(p, one.infinity, 1e-8);
  CHECK(dist(minf.m, m0.m.inverse()) < 1e-7);

  CHECK_THROWS_AS(loop_set({cd(0), cd(0.95)}, cd(1)), kni::Error);
  CHECK_THROWS_AS(loop_set({cd(0)}, cd(0)), kni::Error);
}

TEST_CASE("normal block loops do not commute") {
  const auto s = LinearSystem::companion(hyp());
  const auto set = loop_set({cd(0), cd(0, 1)}, cd(1));
  const auto ms = continue_all(s, set.generators, 1e-8);
  const auto g = group_tests({ms[0].m, ms[1].m});
  CHECK(g.max_defect > 0.1);
  CHECK_FALSE(g.abelian);
}

TEST_CASE("group tests on constructed matrices") {
  CMat d1 = CMat::Zero(2, 2), d2 = CMat::Zero(2, 2);
  d1.diagonal() << cd(2), cd(3);
  d2.diagonal() << cd(0, 1), cd(-1);
  const auto g = group_tests({d1, d2});
  CHECK(g.abelian);
  CHECK(g.max_defect < 1e-15);
  CHECK(g.common_eigenvector);
  CMat rot(2, 2), shear(2, 2);
  rot << 0, -1, 1, 0;
  shear << 1, 1, 0, 1;
  const auto h = group_tests({rot, shear});
  CHECK_FALSE(h.abelian);
  CHECK_FALSE(h.common_eigenvector);
}

TEST_CASE("hypergeometric local eigenvalues") {
  const kni::classify::HGParams gamma{CycNum::parse_expression("5/2-(1/2)i√3"),
                                      CycNum::parse_expression("1/2+(1/2)i√3"), CycNum::parse_expression("1+i√3")};
  const auto e = hg_local_eigenvalues(gamma);
  const double big = std::exp(2 * kPi * std::sqrt(3.0));
  CHECK(std::abs(e[0][1] - big) < 1e-9 * big);
  CHECK(std::abs(e[0][1].real() - 5.3252e4) < 1);
  const auto u = hg_local_eigenvalues({CycNum(Rational(1, 2)), CycNum(Rational(1, 2)), CycNum(1)});
  CHECK(std::abs(u[0][0] - 1.0) < 1e-15);
  CHECK(std::abs(u[0][1] - 1.0) < 1e-12);
  cd prod = 1;
  for (const auto& pt : e)
    for (const cd& v : pt) prod *= v;
  CHECK(std::abs(prod - 1.0) < 1e-9);
}

TEST_CASE("matrix text form") {
  CMat m(1, 2);
  m << cd(0.1, -2), cd(1.0 / 3, 0);
  CHECK(format_matrix(m) == "0.10000000000000001:-2 0.33333333333333331:0");
}
