#include "kni/mech/branch.hpp"

#include <algorithm>
#include <set>

#include "kni/errors.hpp"
#include "kni/exact/mpoly.hpp"
#include "kni/exact/roots.hpp"
#include "kni/mech/hamiltonian.hpp"

namespace kni::mech {

using exact::Chart;
using exact::MPoly;
using exact::MRat;
using exact::Poly;

namespace {

RatFn w_var() { return RatFn::var(); }
RatFn i_const() { return RatFn(CycNum::i()); }

// (w^2 - i)/w
RatFn shape_odd() { return (w_var() * w_var() - i_const()) / w_var(); }
// (w^4 + 1)/w^4
RatFn shape_p1() { return (w_var().pow(4) + RatFn(1)) / w_var().pow(4); }

template <typename T>
sym::Assignment<T> line_assignment(const std::array<T, 4>& c) {
  sym::Assignment<T> at;
  for (std::size_t k = 0; k < 4; ++k) at[static_cast<std::size_t>(kLineCoords[k])] = c[k];
  return at;
}

// Unknowns for the ansatz solve: w, alpha, beta, gamma0.
constexpr int kW = 0, kAlpha = 1, kBeta = 2, kGamma = 3, kN = 4;

MRat mvar(int k) { return MRat::var(kN, k); }
MRat mconst(const CycNum& c) { return MRat::constant(kN, c); }

MRat delta_w(const MRat& f) { return f.derivative(kW) / (mconst(CycNum(2)) * mvar(kW)); }

std::vector<MPoly> ansatz_conditions() {
  const MRat w = mvar(kW), w2 = w * w;
  const MRat odd = (w2 - mconst(CycNum::i())) / w;
  const std::array<MRat, 4> comp = {w2, mvar(kAlpha) * odd, mvar(kGamma) * (w2 * w2 + mconst(CycNum(1))) / (w2 * w2),
                                    mvar(kBeta) * odd};
  const auto at = line_assignment(comp);
  std::vector<MRat> residuals;
  const auto field = restricted_field();
  for (std::size_t k = 0; k < 4; ++k)
    residuals.push_back(delta_w(comp[k]) - sym::evaluate<MRat>(field[k], at) / comp[1]);
  residuals.push_back(sym::evaluate<MRat>(first_integral(), at) - mconst(CycNum(2) * CycNum::i()));

  std::vector<MPoly> out;
  for (const auto& r : residuals) {
    const MPoly& num = r.num();
    for (int e = 0; e <= num.degree_in(kW); ++e) {
      MPoly c = num.coeff_in(kW, e);
      if (c.is_zero()) continue;
      // Scale to a monic-leading representative so duplicates collapse.
      c = c * c.terms().rbegin()->second.inverse();
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  return out;
}

// Eliminates gamma0 through an equation linear in it and returns the
// univariate conditions on the remaining unknown `free_var`, together with
// gamma0 = -q/c.
struct Elimination {
  Poly condition;  // gcd of all univariate conditions (zero if none)
  Poly c, q;       // gamma0 coefficient and constant part
  bool ok = false;
};

Elimination eliminate_gamma(const std::vector<MPoly>& eqs, int free_var) {
  Elimination el;
  const MPoly* lin = nullptr;
  for (const auto& e : eqs)
    if (e.degree_in(kGamma) == 1 && (!lin || e.terms().size() < lin->terms().size())) lin = &e;
  if (!lin) return el;
  const MPoly c = lin->coeff_in(kGamma, 1), q = lin->coeff_in(kGamma, 0);
  Poly g;
  for (const auto& e : eqs) {
    const int d = e.degree_in(kGamma);
    MPoly u(kN);
    for (int k = 0; k <= d; ++k) u += e.coeff_in(kGamma, k) * (-q).pow(static_cast<unsigned>(k)) * c.pow(static_cast<unsigned>(d - k));
    if (u.is_zero()) continue;
    g = gcd(g, u.to_univariate(free_var));
  }
  el.condition = g;
  el.c = c.to_univariate(free_var);
  el.q = q.to_univariate(free_var);
  el.ok = true;
  return el;
}

std::vector<CycNum> admissible_roots(const Elimination& el) {
  std::vector<CycNum> out;
  if (!el.ok || el.condition.degree() < 1) return out;
  for (const auto& r : exact::roots_in_field(el.condition)) {
    if (r.value.is_zero() || el.c.eval(r.value).is_zero()) continue;
    out.push_back(r.value);
  }
  return out;
}

}  // namespace

RatFn CollisionBranch::x1() const { return w_var() * w_var(); }
RatFn CollisionBranch::x3() const { return RatFn(alpha) * shape_odd(); }
RatFn CollisionBranch::p1() const { return RatFn(gamma0) * shape_p1(); }
RatFn CollisionBranch::p3() const { return RatFn(beta) * shape_odd(); }

std::array<RatFn, 4> CollisionBranch::components() const { return {x1(), x3(), p1(), p3()}; }

std::array<RatFn, 4> CollisionBranch::field_residuals() const {
  const auto comp = components();
  const auto at = line_assignment(comp);
  const auto field = restricted_field();
  std::array<RatFn, 4> r;
  for (std::size_t k = 0; k < 4; ++k)
    r[k] = comp[k].derive(Chart::w()) - sym::evaluate<RatFn>(field[k], at) / comp[1];
  return r;
}

bool CollisionBranch::solves_field() const {
  const auto r = field_residuals();
  return std::all_of(r.begin(), r.end(), [](const RatFn& f) { return f.is_zero(); });
}

RatFn CollisionBranch::first_integral() const {
  return sym::evaluate<RatFn>(mech::first_integral(), line_assignment(components()));
}

RatFn CollisionBranch::hamiltonian() const {
  return sym::evaluate<RatFn>(restricted_hamiltonian(), line_assignment(components()));
}

bool CollisionBranch::in_gauge() const { return alpha == CycNum::sqrt2() * beta; }

std::string CollisionBranch::describe() const {
  return "alpha = " + alpha.pretty() + ", beta = " + beta.pretty() + ", gamma0 = " + gamma0.pretty();
}

AnsatzSolution solve_collision_ansatz() {
  AnsatzSolution sol;
  const std::vector<MPoly> eqs = ansatz_conditions();
  const std::vector<std::string> names = {"w", "alpha", "beta", "gamma0"};
  for (const auto& e : eqs) sol.conditions.push_back(e.pretty(names) + " = 0");

  auto accept = [&](CollisionBranch b) {
    if (!b.solves_field()) return;
    if (std::find(sol.branches.begin(), sol.branches.end(), b) == sol.branches.end()) sol.branches.push_back(b);
  };

  // Gauge x3 = sqrt2 p3: alpha = sqrt2 beta, unknowns beta and gamma0.
  {
    std::vector<MPoly> g;
    const MPoly alpha_of_beta = MPoly::var(kN, kBeta) * CycNum::sqrt2();
    for (const auto& e : eqs) {
      MPoly s = e.substitute(kAlpha, alpha_of_beta);
      if (!s.is_zero()) g.push_back(s);
    }
    const Elimination el = eliminate_gamma(g, kBeta);
    for (const CycNum& beta : admissible_roots(el)) {
      const CycNum gamma0 = -el.q.eval(beta) * el.c.eval(beta).inverse();
      accept({CycNum::sqrt2() * beta, beta, gamma0});
    }
  }
  sol.gauge_satisfied = !sol.branches.empty();

  if (sol.branches.empty()) {
    // Fallback: beta = 1, unknowns alpha and gamma0.
    std::vector<MPoly> g;
    for (const auto& e : eqs) {
      MPoly s = e.substitute(kBeta, MPoly(kN, CycNum(1)));
      if (!s.is_zero()) g.push_back(s);
    }
    const Elimination el = eliminate_gamma(g, kAlpha);
    for (const CycNum& alpha : admissible_roots(el)) {
      const CycNum gamma0 = -el.q.eval(alpha) * el.c.eval(alpha).inverse();
      accept({alpha, CycNum(1), gamma0});
    }
  }
  if (sol.branches.empty()) throw Error("collision ansatz: no consistent branch over Q(zeta24)");
  std::sort(sol.branches.begin(), sol.branches.end(),
            [](const CollisionBranch& a, const CollisionBranch& b) { return a.beta.str() < b.beta.str(); });
  return sol;
}

CollisionBranch printed_branch() {
  return {CycNum::sqrt2(), CycNum(1), -CycNum::sqrt2().inverse()};
}

}  // namespace kni::mech
