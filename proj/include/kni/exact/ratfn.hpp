#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "kni/exact/chart.hpp"
#include "kni/exact/poly.hpp"

namespace kni::exact {

/// Rational function over CycNum in one chart variable.
///
/// Canonical form: gcd(num, den) = 1, den monic, zero is 0/1. Every
/// operation returns a canonical value, so == is field equality.
class RatFn {
 public:
  RatFn() : den_(1) {}
  RatFn(const CycNum& c) : num_(c), den_(1) {}  // NOLINT
  RatFn(long c) : RatFn(CycNum(c)) {}           // NOLINT
  RatFn(const Poly& p) : num_(p), den_(1) {}    // NOLINT
  RatFn(const Poly& num, const Poly& den);

  static RatFn var() { return RatFn(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  CycNum constant() const;
  bool is_polynomial() const { return den_.is_constant(); }

  RatFn inverse() const;
  RatFn pow(int e) const;
  /// Ordinary derivative d/dvar.
  RatFn derivative() const;
  /// Derivation of the chart (d/dx1 or (1/(2w)) d/dw).
  RatFn derive(const Chart& chart) const;

  CycNum eval(const CycNum& x) const;
  std::complex<double> eval(std::complex<double> z, int embedding = 1) const;

  /// f(a*x + b).
  RatFn compose_linear(const CycNum& a, const CycNum& b) const;
  /// f(x^2) (x1 -> w^2 re-expression).
  RatFn even_embed() const;
  bool is_even() const;
  bool is_odd() const;
  /// g with g(x^2) = f(x); requires is_even().
  RatFn halve_even() const;
  /// f(1/x).
  RatFn invert_variable() const;
  /// Order of vanishing at 0 (negative for a pole); f nonzero.
  int valuation() const;
  /// Order of vanishing along the irreducible-or-squarefree factor fac.
  int valuation_by(const Poly& fac) const;
  /// Value of x^{-v} f at 0 where v = valuation().
  CycNum leading_at_zero() const;
  RatFn galois(int k) const;

  RatFn& operator+=(const RatFn& o);
  RatFn& operator-=(const RatFn& o);
  RatFn& operator*=(const RatFn& o);
  RatFn& operator/=(const RatFn& o);
  friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
  friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
  friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
  friend RatFn operator/(RatFn a, const RatFn& b) { return a /= b; }
  RatFn operator-() const;
  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  /// "[num coeffs] ÷ [den coeffs]".
  std::string str() const;
  static RatFn parse(std::string_view text);
  std::string pretty(const std::string& var) const;

 private:
  struct Canonical {};
  RatFn(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Poly num_;
  Poly den_;
};

}  // namespace kni::exact
