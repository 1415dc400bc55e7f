#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kni/classify/classify.hpp"
#include "kni/errors.hpp"
#include "kni/ops/diffop.hpp"
#include "kni/var/varsystem.hpp"

namespace kni::mono {

using exact::CycNum;
using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// dY/dz = A(z) Y with rational entries, evaluated in double precision.
class LinearSystem {
 public:
  /// Companion form of the monic operator: Y = (y, y', ..., y^(n-1)).
  static LinearSystem companion(const ops::DiffOp& l);
  /// Plain-chart systems as they are; w-chart systems become dY/dw = 2w A Y.
  static LinearSystem from_varsystem(const var::VarSystem& s);

  int n() const { return n_; }
  /// Throws SingularEvaluation within 1e-12 of a pole.
  CMat eval(cd z) const;
  /// Numeric poles of the entries.
  const std::vector<cd>& poles() const { return poles_; }

 private:
  int n_ = 0;
  std::vector<std::vector<exact::RatFn>> a_;
  std::vector<cd> poles_;
};

struct Loop {
  cd base;
  std::vector<cd> vertices;  // closed: first and last equal base
  std::string tag;
};

/// Square loop around s entered along the ray from the base point, with
/// half-side h.
Loop square_loop(cd base, cd s, double h, std::string tag);
/// Concatenation (first a, then b); both must share the base point.
Loop concat(const Loop& a, const Loop& b, std::string tag);
Loop reversed(const Loop& l, std::string tag);

/// Distance from every segment to every singularity, against clearance
/// 0.3 x (distance from that singularity to the nearest other one or to the
/// base point). Returns an empty string when valid, else the diagnostic.
std::string check_clearance(const Loop& l, const std::vector<cd>& singularities);

struct LoopSet {
  std::vector<Loop> generators;  // one per finite singularity, input order
  std::vector<int> sweep_order;  // generator indices in counterclockwise sweep order
  Loop infinity;                 // clockwise around every finite singularity
  Loop composite;                // generators in sweep order, then the loop at infinity
};

/// Throws kni::Error when the base point violates the clearance of a
/// singularity or an approach ray passes too close to another one.
LoopSet loop_set(const std::vector<cd>& singularities, cd base);

struct MonodromyMatrix {
  CMat m;
  /// Frobenius discrepancy against the re-run, relative to `scale`.
  double residual = 0;
  /// Largest norm of the transported matrix along the loop (at least 1).
  double scale = 1;
  std::string loop;
  bool accepted = false;
  std::string diagnostics;
  long steps = 0;
};

/// Fundamental matrix transported from the identity along the loop
/// (Phi with Z_gamma = Z Phi for Z(base) = I). A second pass with rtol/32
/// and half the maximum step gives the residual; accepted iff residual <= tol.
MonodromyMatrix continue_along(const LinearSystem& sys, const Loop& loop, double tol);

/// continue_along on every loop concurrently; results in input order.
std::vector<MonodromyMatrix> continue_all(const LinearSystem& sys, const std::vector<Loop>& loops, double tol);

struct GroupTests {
  std::vector<std::array<int, 2>> pairs;
  std::vector<double> defects;  // ||AB - BA||_F / (||A||_F ||B||_F)
  double max_defect = 0;
  bool abelian = false;  // every defect < 1e-6
  bool common_eigenvector = false;
};
GroupTests group_tests(const std::vector<CMat>& mats, double eig_tol = 1e-6);

/// Local eigenvalues of 2F1(a, b; c; u) at u = 0, 1, infinity.
std::array<std::array<cd, 2>, 3> hg_local_eigenvalues(const classify::HGParams& p);

/// exp(2 pi i rho) for each exponent, with multiplicity.
std::vector<cd> exponent_eigenvalues(const std::vector<ops::Exponent>& exps);
/// Max relative distance under the best matching (sizes must agree); a
/// repeated expected value is compared against the mean of its matches.
double eigenvalue_mismatch(std::vector<cd> computed, std::vector<cd> expected);
std::vector<cd> eigenvalues(const CMat& m);

/// 17 significant digits, row-major, "re+imi" entries.
std::string format_matrix(const CMat& m);

}  // namespace kni::mono
