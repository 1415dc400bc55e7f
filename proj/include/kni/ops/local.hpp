#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kni/ops/diffop.hpp"

namespace kni::ops {

/// A finite point of the chart line or the point at infinity.
struct Point {
  bool infinite = false;
  CycNum value;
  static Point at(const CycNum& v) { return {false, v}; }
  static Point infinity() { return {true, CycNum(0)}; }
  std::string pretty() const { return infinite ? "infinity" : value.pretty(); }
  friend bool operator==(const Point& a, const Point& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

struct Exponent {
  bool exact = true;
  CycNum value;                  // when exact
  std::complex<double> numeric;  // always filled
  int multiplicity = 1;
};

struct IndicialData {
  Point point;
  bool regular = true;
  /// In the local variable t = x - p (or t = 1/x at infinity); solutions
  /// behave like t^rho. Empty when the point is irregular.
  Poly polynomial;
  std::vector<Exponent> exponents;
};

/// Local variable t with x = p + t, or x = 1/t at infinity; returns the
/// operator in t (plain chart "t").
DiffOp localize(const DiffOp& l, const Point& p);
IndicialData indicial_data(const DiffOp& l, const Point& p);

/// Finite singular points: zeros of the leading coefficient and poles of the
/// monic coefficients. Points in Q(zeta24) only; `numeric_only` receives the
/// count of singular points outside the field.
std::vector<CycNum> finite_singularities(const DiffOp& l, int* numeric_only = nullptr);

struct FormalSeries {
  Point point;
  CycNum rho;
  std::vector<CycNum> coeffs;  // c_0 .. c_N
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// L applied to t^rho sum c_j t^j: the residual coefficients of
/// t^(rho + m) for every m whose value is fully determined by c_0..c_N.
struct SeriesResidual {
  int first_offset = 0;
  std::vector<CycNum> coeffs;
  bool vanishes() const;
  /// Offset of the first nonzero residual term, if any.
  std::optional<int> first_nonzero() const;
};
SeriesResidual series_check(const DiffOp& l, const FormalSeries& s);

/// Coefficients of 2F1(a, b; c; u) up to u^n, exact.
std::vector<CycNum> hypergeometric_coefficients(const CycNum& a, const CycNum& b, const CycNum& c, int n);

}  // namespace kni::ops
