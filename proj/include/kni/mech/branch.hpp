#pragma once

#include <array>
#include <string>
#include <vector>

#include "kni/exact/ratfn.hpp"

namespace kni::mech {

using exact::CycNum;
using exact::RatFn;

/// Collision solution on the line, parametrized by w with x1 = w^2:
///   x3 = alpha (w^2 - i)/w,  p3 = beta (w^2 - i)/w,  p1 = gamma0 (w^4 + 1)/w^4.
struct CollisionBranch {
  CycNum alpha, beta, gamma0;

  RatFn x1() const;
  RatFn x3() const;
  RatFn p1() const;
  RatFn p3() const;
  /// (x1, x3, p1, p3) as functions of w.
  std::array<RatFn, 4> components() const;

  /// d(component)/dx1 - field(component)/x3 for each of (x1, x3, p1, p3).
  std::array<RatFn, 4> field_residuals() const;
  bool solves_field() const;
  /// First integral and Hamiltonian along the branch.
  RatFn first_integral() const;
  RatFn hamiltonian() const;
  /// x3 = sqrt2 p3 along the branch.
  bool in_gauge() const;

  std::string describe() const;
  friend bool operator==(const CollisionBranch& a, const CollisionBranch& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma0 == b.gamma0;
  }
};

struct AnsatzSolution {
  std::vector<CollisionBranch> branches;
  /// Polynomial conditions on (alpha, beta, gamma0), pretty-printed.
  std::vector<std::string> conditions;
  /// True when the branches satisfy x3 = sqrt2 p3; false when the
  /// fallback normalization beta = 1 was used.
  bool gauge_satisfied = false;
};

/// Substitutes the ansatz with unknown constants into the line field in
/// x1-time and into C = 2i, then solves the resulting polynomial system over
/// Q(zeta24). The free scale is fixed by x3 = sqrt2 p3 when possible.
/// Throws if no branch exists.
AnsatzSolution solve_collision_ansatz();

/// The constants exactly as printed: (sqrt2, 1, -1/sqrt2).
CollisionBranch printed_branch();

}  // namespace kni::mech
