#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "kni/mech/branch.hpp"
#include "kni/exact/roots.hpp"
#include "kni/numeric/dopri.hpp"
#include "kni/ops/diffop.hpp"
#include "kni/ops/fixtures.hpp"
#include "kni/ops/local.hpp"

using namespace kni::ops;
using kni::exact::Rational;
using kni::var::VarSystem;

namespace {

const Chart kX = Chart::x1();
const RatFn x = RatFn::var();
const DiffOp D = DiffOp::derivation(kX);

RatFn rnd_poly(std::mt19937& g, int deg, bool real = false) {
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<CycNum> cs;
  for (int k = 0; k <= deg; ++k) {
    CycNum v(c(g));
    if (!real) v += CycNum(c(g)) * CycNum::i();
    cs.push_back(v);
  }
  return RatFn(Poly(cs));
}

RatFn rnd_ratfn(std::mt19937& g, bool real = false) {
  RatFn den = rnd_poly(g, 1, real);
  while (den.is_zero()) den = rnd_poly(g, 1, real);
  return rnd_poly(g, 2, real) / den;
}

DiffOp rnd_op(std::mt19937& g, int order) {
  std::vector<RatFn> cs;
  for (int k = 0; k < order; ++k) cs.push_back(rnd_ratfn(g));
  cs.push_back(RatFn(1) + rnd_poly(g, 0));
  return DiffOp(kX, cs);
}

std::vector<Exponent> exps(const DiffOp& l, const Point& p) { return indicial_data(l, p).exponents; }

bool has_exponent(const std::vector<Exponent>& es, const CycNum& v) {
  for (const auto& e : es)
    if (e.exact && e.value == v) return true;
  return false;
}

}  // namespace

TEST_CASE("Ore commutation") {
  const DiffOp dx = op_mul(D, DiffOp::scalar(kX, x));
  CHECK(dx == x * D + DiffOp::scalar(kX, RatFn(1)));
  // (D + 1/x) x^2 = 3x and (D - 1/x) 3x = 0
  const DiffOp a = D - DiffOp::scalar(kX, x.inverse());
  const DiffOp b = D + DiffOp::scalar(kX, x.inverse());
  CHECK(op_mul(a, b).apply(x.pow(2)) == a.apply(b.apply(x.pow(2))));
  CHECK(op_mul(a, b).apply(x.pow(2)).is_zero());
  const DiffOp one = DiffOp::scalar(kX, RatFn(1));
  std::mt19937 g(7);
  const DiffOp l = rnd_op(g, 3);
  CHECK(op_mul(l, one) == l);
  CHECK(op_mul(one, l) == l);
}

TEST_CASE("Ore product is associative and acts as composition") {
  std::mt19937 g(11);
  for (int t = 0; t < 6; ++t) {
    const DiffOp a = rnd_op(g, 1 + t % 3), b = rnd_op(g, 2), c = rnd_op(g, 1);
    CHECK(op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c)));
    const RatFn f = rnd_ratfn(g);
    CHECK(op_mul(a, b).apply(f) == a.apply(b.apply(f)));
  }
}

TEST_CASE("right division") {
  const DiffOp l = DiffOp(kX, {RatFn(2) / x.pow(2), RatFn(-2) / x, RatFn(1)});
  const DiffOp r = D - DiffOp::scalar(kX, x.inverse());
  const Division d = right_divide(l, r);
  CHECK(d.remainder.is_zero());
  CHECK(op_mul(d.quotient, r) == l);
  std::mt19937 g(3);
  for (int t = 0; t < 6; ++t) {
    const DiffOp q = rnd_op(g, 2), rr = rnd_op(g, 2);
    const DiffOp rem = DiffOp(kX, {rnd_ratfn(g)});
    const Division dd = right_divide(op_mul(q, rr) + rem, rr);
    CHECK(dd.quotient == q);
    CHECK(dd.remainder == rem);
  }
}

TEST_CASE("twists") {
  CHECK(twist(D, x) == D + DiffOp::scalar(kX, x));
  const DiffOp l = D - DiffOp::scalar(kX, (RatFn(2) * x).inverse());
  // sqrt(x) solves l, so l(D + 1/(2x)) kills 1
  CHECK(twist(l, (RatFn(2) * x).inverse()).apply(RatFn(1)).is_zero());
  std::mt19937 g(5);
  const DiffOp m = rnd_op(g, 3);
  const RatFn r = rnd_ratfn(g);
  CHECK(twist(twist(m, r), -r) == m);
}

TEST_CASE("affine change of variable") {
  std::mt19937 g(13);
  const DiffOp m = rnd_op(g, 3);
  const CycNum a = CycNum::i(), b(1);
  const DiffOp u = affine_subst(m, a, b);
  CHECK(u.chart() == Chart::plain("u"));
  const DiffOp back = affine_subst(u, a.inverse(), -b * a.inverse(), "x1");
  CHECK(back == m);
  // D_x = a D_u
  CHECK(affine_subst(D, a, b) == DiffOp(Chart::plain("u"), {RatFn(0), RatFn(a)}));
}

TEST_CASE("w chart and x1 chart") {
  std::mt19937 g(17);
  const DiffOp m = rnd_op(g, 2);
  const DiffOp w = to_w_chart(m);
  CHECK(w.is_even());
  CHECK(to_x1_chart(w) == m);
  // x1 = w^2 is killed by D^2 in both charts
  CHECK(to_w_chart(DiffOp(kX, {RatFn(0), RatFn(0), RatFn(1)})).apply(x.even_embed().pow(2)) == RatFn(2));
}

TEST_CASE("indicial exponents") {
  // x^2 D^2 + x D - 1: x and 1/x
  const DiffOp euler(kX, {RatFn(-1), x, x.pow(2)});
  const auto e0 = exps(euler, Point::at(CycNum(0)));
  CHECK(e0.size() == 2);
  CHECK(has_exponent(e0, CycNum(1)));
  CHECK(has_exponent(e0, CycNum(-1)));
  const auto einf = exps(euler, Point::infinity());
  CHECK(has_exponent(einf, CycNum(1)));
  CHECK(has_exponent(einf, CycNum(-1)));
  CHECK(indicial_data(euler, Point::at(CycNum(3))).exponents.size() == 2);
  CHECK(has_exponent(exps(euler, Point::at(CycNum(3))), CycNum(0)));

  const CycNum a(Rational(1, 3)), b(Rational(1, 4)), c(Rational(2, 5));
  const DiffOp h = hypergeometric_operator(a, b, c);
  CHECK(has_exponent(exps(h, Point::at(CycNum(0))), CycNum(1) - c));
  CHECK(has_exponent(exps(h, Point::at(CycNum(1))), c - a - b));
  CHECK(has_exponent(exps(h, Point::infinity()), a));
  CHECK(has_exponent(exps(h, Point::infinity()), b));
  const auto sing = finite_singularities(h);
  CHECK(sing.size() == 2);

  // D^2 + 1/x^3: irregular at 0
  CHECK_FALSE(indicial_data(DiffOp(kX, {x.pow(-3), RatFn(0), RatFn(1)}), Point::at(CycNum(0))).regular);
}

TEST_CASE("formal series residuals") {
  // D - 1 and exp
  std::vector<CycNum> e{CycNum(1)};
  for (int k = 1; k <= 20; ++k) e.push_back(e.back() * CycNum(Rational(1, k)));
  const DiffOp l = D - DiffOp::scalar(kX, RatFn(1));
  const auto ok = series_check(l, {Point::at(CycNum(0)), CycNum(0), e});
  CHECK(ok.vanishes());
  auto bad = e;
  bad[7] += CycNum(1);
  const auto r = series_check(l, {Point::at(CycNum(0)), CycNum(0), bad});
  CHECK_FALSE(r.vanishes());
  REQUIRE(r.first_nonzero());
  CHECK(*r.first_nonzero() == 6);

  const CycNum a(Rational(1, 3)), b(2), c(Rational(-1, 2));
  const auto hc = hypergeometric_coefficients(a, b, c, 30);
  CHECK(hc[1] == a * b * c.inverse());
  CHECK(series_check(hypergeometric_operator(a, b, c), {Point::at(CycNum(0)), CycNum(0), hc}).vanishes());
}

TEST_CASE("order reduction") {
  // solutions x and x^2
  const DiffOp l(kX, {RatFn(2) / x.pow(2), RatFn(-2) / x, RatFn(1)});
  CHECK(annihilates_hyperexponential(l, x.inverse()));
  CHECK_FALSE(annihilates_hyperexponential(l, RatFn(1)));
  const DiffOp m = reduce_order(l, x.inverse());
  CHECK(m.order() == 1);
  // (x^2/x)' = 1
  CHECK(m.apply(RatFn(1)).is_zero());
  CHECK_THROWS_AS(reduce_order(l, RatFn(1)), NotASolution);
  CHECK(reduce_order(DiffOp(kX, {RatFn(0), RatFn(0), RatFn(1)}), x.inverse()) == D + DiffOp::scalar(kX, RatFn(2) / x));
}

TEST_CASE("cyclic reduction of small systems") {
  VarSystem diag({"a", "b"}, kX);
  diag.at(0, 0) = x.inverse();
  diag.at(1, 1) = RatFn(2) / x;
  const auto c = cyclic_reduce(diag, 0);
  CHECK(c.order_dropped);
  CHECK(c.op == D - DiffOp::scalar(kX, x.inverse()));

  // companion of D^2 - x
  VarSystem comp({"y", "dy"}, kX);
  comp.at(0, 1) = RatFn(1);
  comp.at(1, 0) = x;
  const auto cc = cyclic_reduce(comp, 0);
  CHECK_FALSE(cc.order_dropped);
  CHECK(cc.op == DiffOp(kX, {-x, RatFn(0), RatFn(1)}));
}

TEST_CASE("cyclic reduction agrees with direct integration") {
  std::mt19937 g(23);
  const int n = 3, k = 1;
  VarSystem sys({"a", "b", "c"}, kX);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sys.at(i, j) = rnd_ratfn(g, true);
  const auto red = cyclic_reduce(sys, k);
  REQUIRE(red.op.order() == n);

  // Row vectors L_0 = e_k, L_{j+1} = L_j' + L_j A give X_k^(j) = L_j Y.
  std::vector<std::vector<RatFn>> forms{std::vector<RatFn>(n)};
  forms[0][k] = RatFn(1);
  for (int j = 1; j < n; ++j) {
    std::vector<RatFn> next(n);
    for (int c = 0; c < n; ++c) {
      next[c] = forms.back()[c].derivative();
      for (int r = 0; r < n; ++r) next[c] += forms.back()[r] * sys.at(r, c);
    }
    forms.push_back(next);
  }
  // Start away from the poles of the random system.
  double x0 = 0.5;
  auto near_pole = [&](double t) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& r : kni::exact::numeric_roots(sys.at(i, j).den()))
          if (std::abs(r - std::complex<double>(t)) < 0.3) return true;
    for (const auto& cf : red.op.coeffs())
      for (const auto& r : kni::exact::numeric_roots(cf.den()))
        if (std::abs(r - std::complex<double>(t)) < 0.3) return true;
    return false;
  };
  while (near_pole(x0) || near_pole(x0 + 0.25) || near_pole(x0 + 0.5)) x0 += 0.37;
  const double x1 = x0 + 0.5;
  auto ev = [](const RatFn& f, double t) { return f.eval(std::complex<double>(t)).real(); };

  Eigen::VectorXd y0(n);
  y0 << 1.0, -0.5, 0.25;
  kni::numeric::DopriOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto fs = [&](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i) += ev(sys.at(i, j), t) * y(j);
    return d;
  };
  const Eigen::VectorXd ys = kni::numeric::dopri_integrate(fs, x0, y0, x1, opt, nullptr);

  Eigen::VectorXd z0(n);
  for (int j = 0; j < n; ++j) {
    z0(j) = 0;
    for (int c = 0; c < n; ++c) z0(j) += ev(forms[j][c], x0) * y0(c);
  }
  auto fz = [&](double t, const Eigen::VectorXd& z) {
    Eigen::VectorXd d(n);
    for (int j = 0; j + 1 < n; ++j) d(j) = z(j + 1);
    d(n - 1) = 0;
    for (int j = 0; j < n; ++j) d(n - 1) -= ev(red.op.coeff(j), t) * z(j);
    return d;
  };
  const Eigen::VectorXd zs = kni::numeric::dopri_integrate(fz, x0, z0, x1, opt, nullptr);
  CHECK(std::abs(zs(0) - ys(k)) < 1e-8 * std::max(1.0, std::abs(ys(k))));
}

TEST_CASE("normal block reductions are even in w") {
  const auto b = kni::mech::solve_collision_ansatz().branches.at(1);
  const VarSystem a3 = kni::var::extract_normal_block(kni::var::variational_matrix(b, kni::var::TimeScale::x1));
  for (int k = 0; k < 4; ++k) {
    const auto c = cyclic_reduce(a3, k);
    CHECK(c.op.order() == 4);
    CHECK(c.op.is_even());
  }
}

TEST_CASE("displayed operator readings") {
  const DiffOp p = printed_order4_operator(LastDenominator::AsPrinted);
  const DiffOp v = printed_order4_operator(LastDenominator::ReadWithI);
  CHECK(p.order() == 4);
  CHECK(p != v);
  CHECK(p.coeff(3) == v.coeff(3));
  CHECK(p.coeff(0).den().eval(CycNum(1)).is_zero());
  CHECK_FALSE(v.coeff(0).den().eval(CycNum(1)).is_zero());
  // sqrt(x1)(1 + i x1)^e has the advertised log-derivative
  const CycNum e(Rational(-3, 2));
  CHECK(hypergeometric_gauge(e) == (RatFn(2) * x).inverse() + RatFn(e) * RatFn(CycNum::i()) / (RatFn(1) + RatFn(CycNum::i()) * x));
}

TEST_CASE("operator text round trip") {
  std::mt19937 g(29);
  const DiffOp m = rnd_op(g, 4);
  CHECK(DiffOp::parse(m.serialize()) == m);
  const DiffOp v = printed_order4_operator(LastDenominator::ReadWithI);
  CHECK(DiffOp::parse(v.serialize()) == v);
  CHECK_THROWS_AS(DiffOp::parse("diffop 1\nx1\n1\n[1] ÷ [1]\n"), kni::ParseError);
  CHECK_THROWS_AS(DiffOp::parse("nonsense"), kni::ParseError);
}
