#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kni/errors.hpp"
#include "kni/exact/ratfn.hpp"
#include "kni/var/varsystem.hpp"

namespace kni::ops {

using exact::Chart;
using exact::CycNum;
using exact::Poly;
using exact::RatFn;

/// Scalar linear differential operator sum a_k D^k, D the chart derivation.
/// Coefficients are trimmed so that the leading one is nonzero; the zero
/// operator has no coefficients.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(Chart chart, std::vector<RatFn> coeffs);
  static DiffOp derivation(const Chart& chart) { return DiffOp(chart, {RatFn(0), RatFn(1)}); }
  static DiffOp scalar(const Chart& chart, const RatFn& f) { return DiffOp(chart, {f}); }

  const Chart& chart() const { return chart_; }
  /// -1 for the zero operator.
  int order() const { return static_cast<int>(a_.size()) - 1; }
  bool is_zero() const { return a_.empty(); }
  const std::vector<RatFn>& coeffs() const { return a_; }
  /// a_k, zero beyond the order.
  RatFn coeff(int k) const;
  const RatFn& lc() const { return a_.back(); }
  DiffOp monic() const;

  /// L(f) for a rational function f.
  RatFn apply(const RatFn& f) const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  /// Left multiplication by a function.
  friend DiffOp operator*(const RatFn& f, const DiffOp& l);
  DiffOp operator-() const;
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.chart_ == b.chart_ && a.a_ == b.a_; }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  /// Coefficients all even in the chart variable.
  bool is_even() const;

  /// "diffop 1", chart tag, order, then one RatFn line per coefficient a_0..a_n.
  std::string serialize() const;
  static DiffOp parse(std::string_view text);
  std::string pretty() const;

 private:
  void trim();
  Chart chart_;
  std::vector<RatFn> a_;
};

/// Ore product L1 L2 using D a = a D + delta(a).
DiffOp op_mul(const DiffOp& l1, const DiffOp& l2);

struct Division {
  DiffOp quotient;
  DiffOp remainder;
};
/// L = Q R + Rem with order(Rem) < order(R).
Division right_divide(const DiffOp& l, const DiffOp& r);

/// L(D + r): if f'/f = r then ker(twist(L, r)) = (1/f) ker(L).
DiffOp twist(const DiffOp& l, const RatFn& r);

/// Rewrites L (plain chart in x) in the variable u = a x + b.
DiffOp affine_subst(const DiffOp& l, const CycNum& a, const CycNum& b, const std::string& var = "u");

/// w-chart operator with even coefficients to the x1 chart, and back.
DiffOp to_x1_chart(const DiffOp& l);
DiffOp to_w_chart(const DiffOp& l);

struct CyclicResult {
  DiffOp op;            // monic
  bool order_dropped;   // dependency found before order n
};
/// Cyclic-vector reduction: monic operator annihilating coordinate k of
/// every solution of Y' = A Y.
CyclicResult cyclic_reduce(const var::VarSystem& sys, int k);

/// The operator of L twisted by r0 lost its order-0 term, i.e. y0 with
/// y0'/y0 = r0 is not a solution of L.
class NotASolution : public Error {
 public:
  NotASolution(const std::string& what, DiffOp residual) : Error(what), residual_(std::move(residual)) {}
  const DiffOp& residual() const { return residual_; }

 private:
  DiffOp residual_;
};

/// Whether y0 with logarithmic derivative r0 solves L exactly.
bool annihilates_hyperexponential(const DiffOp& l, const RatFn& r0);
/// Monic operator of order n - 1 annihilating (X/y0)' for every solution X of L.
DiffOp reduce_order(const DiffOp& l, const RatFn& r0);

/// u(1 - u) D^2 + (c - (a + b + 1) u) D - a b in the plain chart `var`.
DiffOp hypergeometric_operator(const CycNum& a, const CycNum& b, const CycNum& c, const std::string& var = "u");

}  // namespace kni::ops
