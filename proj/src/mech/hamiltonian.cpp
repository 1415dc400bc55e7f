#include "kni/mech/hamiltonian.hpp"

namespace kni::mech {

namespace {

Expr kepler_part() {
  const Expr x1(Var::x1), x2(Var::x2), x3(Var::x3), x4(Var::x4);
  const Expr p1(Var::p1), p2(Var::p2), p3(Var::p3), p4(Var::p4);
  return p1 * x3 + p2 * x4 - (p3 * x1 + p4 * x2) / Expr(Var::r1).pow(3);
}

}  // namespace

Expr pseudo_hamiltonian() {
  return kepler_part() + Expr(Var::p3) * Expr(Var::u1) + Expr(Var::p4) * Expr(Var::u2);
}

Expr maximized_hamiltonian() { return kepler_part() + Expr(Var::r2); }

Expr restricted_hamiltonian() {
  const Expr x1(Var::x1), p3(Var::p3);
  return Expr(Var::p1) * Expr(Var::x3) - p3 / x1.pow(2) - p3;
}

Expr restrict_to_line(const Expr& e) {
  Expr r = e;
  for (Var v : {Var::x2, Var::x4, Var::p2, Var::p4}) r = sym::substitute(r, v, Expr(0));
  r = sym::substitute(r, Var::r1, Expr(Var::x1));
  r = sym::substitute(r, Var::r2, -Expr(Var::p3));
  return r;
}

Expr first_integral() {
  const Expr x1(Var::x1), x3(Var::x3);
  return x3.pow(2) / Expr(2) + x1 - Expr(1) / x1;
}

std::array<Expr, 4> restricted_field() {
  const Expr x1(Var::x1);
  return {Expr(Var::x3), Expr(-1) - Expr(1) / x1.pow(2), Expr(-2) * Expr(Var::p3) / x1.pow(3), -Expr(Var::p1)};
}

std::array<Expr, 4> line_field(const Expr& h) {
  return {sym::differentiate(h, Var::p1), sym::differentiate(h, Var::p3), -sym::differentiate(h, Var::x1),
          -sym::differentiate(h, Var::x3)};
}

Expr poisson_bracket(const Expr& f, const Expr& g) {
  Expr r;
  for (auto [q, p] : {std::pair{Var::x1, Var::p1}, std::pair{Var::x3, Var::p3}}) {
    r = r + sym::differentiate(f, q) * sym::differentiate(g, p) - sym::differentiate(f, p) * sym::differentiate(g, q);
  }
  return r;
}

exact::MRat normalize_on_line(const Expr& e) {
  sym::Assignment<exact::MRat> at;
  for (int k = 0; k < 4; ++k) at[static_cast<std::size_t>(kLineCoords[static_cast<std::size_t>(k)])] = exact::MRat::var(4, k);
  exact::MRat r = sym::evaluate<exact::MRat>(e, at);
  if (r.nvars() == 0) r = exact::MRat(exact::MPoly(4, r.num().constant_term()), exact::MPoly(4, r.den().constant_term()));
  return r;
}

}  // namespace kni::mech
