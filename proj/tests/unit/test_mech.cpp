#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "kni/mech/branch.hpp"
#include "kni/mech/extremal.hpp"
#include "kni/mech/hamiltonian.hpp"

using namespace kni::mech;
using kni::exact::Chart;
using kni::exact::CycNum;
using kni::exact::RatFn;
using kni::sym::probably_equal;
using kni::exact::Rational;

TEST_CASE("restricted field in closed form agrees with the derived one") {
  const auto closed = restricted_field();
  const auto derived = line_field(restrict_to_line(maximized_hamiltonian()));
  for (std::size_t k = 0; k < 4; ++k) CHECK(probably_equal(closed[k], derived[k]));
  // second-order forms: x1'' = -1 - 1/x1^2, p3'' = 2 p3/x1^3
  const Expr x1(Var::x1), p3(Var::p3);
  CHECK(probably_equal(closed[1], Expr(-1) - Expr(1) / x1.pow(2)));
  const Expr p3dd = -closed[2];
  CHECK(probably_equal(p3dd, Expr(2) * p3 / x1.pow(3)));
}

TEST_CASE("Poisson brackets on the line") {
  CHECK(normalize_on_line(poisson_bracket(Expr(Var::x1), Expr(Var::p1))) == kni::exact::MRat::constant(4, CycNum(1)));
  CHECK(normalize_on_line(poisson_bracket(restricted_hamiltonian(), first_integral())).is_zero());
  CHECK(normalize_on_line(poisson_bracket(first_integral(), first_integral())).is_zero());
  CHECK(!normalize_on_line(poisson_bracket(restricted_hamiltonian(), Expr(Var::x1))).is_zero());
}

TEST_CASE("homogeneity of the maximized Hamiltonian") {
  const Expr h = maximized_hamiltonian();
  const Expr lam = Expr(CycNum(Rational(7, 3)) + CycNum::zeta(1));
  Expr scaled = h;
  for (Var v : {Var::p1, Var::p2, Var::p3, Var::p4, Var::r2}) scaled = kni::sym::substitute(scaled, v, lam * Expr(v));
  CHECK(probably_equal(scaled, lam * h));
}

TEST_CASE("pseudo-Hamiltonian with the maximizing control equals the maximized one") {
  Expr h = pseudo_hamiltonian();
  h = kni::sym::substitute(h, Var::u1, Expr(Var::p3) / Expr(Var::r2));
  h = kni::sym::substitute(h, Var::u2, Expr(Var::p4) / Expr(Var::r2));
  // p3^2/r2 + p4^2/r2 = r2 on the radical surface
  CHECK(probably_equal(h, maximized_hamiltonian()));
}

TEST_CASE("C = 2i forces x3^2 = -2 (x1 - i)^2 / x1") {
  const RatFn x = RatFn::var(), i(CycNum::i());
  const RatFn lhs = RatFn(2) * (RatFn(CycNum(2) * CycNum::i()) - x + x.inverse());
  const RatFn rhs = RatFn(-2) * (x - i).pow(2) / x;
  CHECK(lhs == rhs);
}

TEST_CASE("collision ansatz solve") {
  const AnsatzSolution sol = solve_collision_ansatz();
  REQUIRE(sol.gauge_satisfied);
  REQUIRE(sol.branches.size() == 2);
  // Hand derivation: alpha^2 = -2, gamma0 = beta/alpha, gauge alpha = sqrt2 beta.
  const CycNum i = CycNum::i(), s2 = CycNum::sqrt2();
  for (const auto& b : sol.branches) {
    CHECK(b.solves_field());
    CHECK(b.in_gauge());
    CHECK(b.alpha * b.alpha == CycNum(-2));
    CHECK((b.beta == i || b.beta == -i));
    CHECK(b.gamma0 == s2.inverse());
    CHECK(b.first_integral() == RatFn(CycNum(2) * i));
    CHECK(b.hamiltonian() == RatFn(0));
    for (const auto& r : b.field_residuals()) CHECK(r.is_zero());
  }
  CHECK(!sol.conditions.empty());
}

TEST_CASE("printed constants leave a nonzero residual") {
  const CollisionBranch b = printed_branch();
  CHECK(!b.solves_field());
  // the x3 equation needs alpha^2 = -2, but alpha^2 = 2 here
  CHECK(!b.field_residuals()[1].is_zero());
  CHECK(b.field_residuals()[0].is_zero());
}

TEST_CASE("real field: circular orbit data") {
  const RealState s = {1, 0, 0, 1, 0, 0, 0, 1};
  const RealState f = pmp_field_real(s);
  CHECK(f[0] == doctest::Approx(0));
  CHECK(f[1] == doctest::Approx(1));
  CHECK(f[2] == doctest::Approx(-1));
  CHECK(f[3] == doctest::Approx(1));
  CHECK(f[6] == doctest::Approx(0));
}

TEST_CASE("real field: control depends on the costate direction only") {
  for (double lam : {0.1, 1.0, 7.5}) {
    const RealState s = {1.2, 0.3, -0.1, 0.9, 0.2, -0.4, 0.6 * lam, 0.8 * lam};
    const RealState f = pmp_field_real(s);
    const double r = std::hypot(1.2, 0.3);
    CHECK(f[2] + 1.2 / (r * r * r) == doctest::Approx(0.6));
    CHECK(f[3] + 0.3 / (r * r * r) == doctest::Approx(0.8));
  }
}

TEST_CASE("real field: singular control") {
  const RealState s = {1, 0, 0, 1, 0.5, 0.5, 0, 0};
  CHECK_THROWS_AS(pmp_field_real(s), SingularControl);
}

TEST_CASE("real field agrees with finite differences of H") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n = 0; n < 20; ++n) {
    RealState s;
    for (auto& v : s) v = u(rng);
    s[0] += 2.0;
    s[6] += 1.5;
    const RealState f = pmp_field_real(s);
    for (int k = 0; k < 8; ++k) {
      const double h = 1e-6;
      RealState sp = s, sm = s;
      sp[static_cast<std::size_t>(k)] += h;
      sm[static_cast<std::size_t>(k)] -= h;
      const double d = (hamiltonian_real(sp) - hamiltonian_real(sm)) / (2 * h);
      // x' = dH/dp, p' = -dH/dx
      const double expect = k < 4 ? -f[static_cast<std::size_t>(k + 4)] : f[static_cast<std::size_t>(k - 4)];
      CHECK(d == doctest::Approx(expect).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("uncontrolled Kepler energy is conserved") {
  ExtremalOptions opt;
  opt.field.thrust_scale = 0;
  opt.tol = 1e-12;
  const RealState s = {1, 0, 0, 1.1, 0, 0, 0, 1};
  const auto r = integrate_extremal(s, 10, opt);
  CHECK(r.completed);
  CHECK(r.energy_drift <= 1e-9);
}

TEST_CASE("maximized Hamiltonian is conserved along a controlled extremal") {
  ExtremalOptions opt;
  opt.tol = 1e-12;
  const RealState s = {1, 0, 0, 1, 0, 0, 0, 1};
  const auto r = integrate_extremal(s, 10, opt);
  CHECK(r.completed);
  CHECK(r.h_drift <= 1e-9);
  CHECK(r.validation_discrepancy < 1e-6);
  std::ostringstream os;
  write_trajectory_csv(os, r);
  CHECK(os.str().rfind("t,x1,x2,x3,x4,p1,p2,p3,p4,H,pv_norm\n", 0) == 0);
}

TEST_CASE("first integral drift on the real collision line") {
  ExtremalOptions opt;
  opt.tol = 1e-12;
  opt.stop_x1_below = 0.2;
  const RealState s = {2, 0, 0, 0, 0, 0, -1, 0};
  const auto r = integrate_extremal(s, 10, opt);
  CHECK(!r.completed);
  CHECK(r.samples.back().state[0] < 0.3);
  CHECK(r.c_drift <= 1e-9);
}
