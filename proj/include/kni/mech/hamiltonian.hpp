#pragma once

#include <array>

#include "kni/exact/mpoly.hpp"
#include "kni/sym/expr.hpp"

namespace kni::mech {

using sym::Expr;
using sym::Var;

/// p1 x3 + p2 x4 - (p3 x1 + p4 x2)/r1^3 + p3 u1 + p4 u2.
Expr pseudo_hamiltonian();
/// p1 x3 + p2 x4 - (p3 x1 + p4 x2)/r1^3 + r2, rational on the radical surface.
Expr maximized_hamiltonian();
/// Closed form of the maximized Hamiltonian on the collision line:
/// p1 x3 - p3/x1^2 - p3.
Expr restricted_hamiltonian();
/// Substitutes x2 = x4 = p2 = p4 = 0, r1 = x1, r2 = -p3.
Expr restrict_to_line(const Expr& e);
/// C = x3^2/2 + x1 - 1/x1.
Expr first_integral();

/// Line coordinates in the order (x1, x3, p1, p3).
inline constexpr std::array<Var, 4> kLineCoords = {Var::x1, Var::x3, Var::p1, Var::p3};

/// The Hamiltonian field on the line in closed form, components for
/// (x1, x3, p1, p3): (x3, -1 - 1/x1^2, -2 p3/x1^3, -p1).
std::array<Expr, 4> restricted_field();
/// J grad h on the line with x' = dh/dp, p' = -dh/dx.
std::array<Expr, 4> line_field(const Expr& h);

/// Canonical bracket on the line with pairs (x1, p1), (x3, p3):
/// sum over pairs of df/dq dg/dp - df/dp dg/dq.
Expr poisson_bracket(const Expr& f, const Expr& g);
/// Exact normal form of an expression in (x1, x3, p1, p3) as a multivariate
/// rational function in that variable order.
exact::MRat normalize_on_line(const Expr& e);

}  // namespace kni::mech
