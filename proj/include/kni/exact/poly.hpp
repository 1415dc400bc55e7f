#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kni/exact/cycnum.hpp"

namespace kni::exact {

/// Dense univariate polynomial over CycNum, coefficients low to high.
/// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class Poly {
 public:
  Poly() = default;
  Poly(const CycNum& c);  // NOLINT
  Poly(long c) : Poly(CycNum(c)) {}  // NOLINT
  explicit Poly(std::vector<CycNum> coeffs);

  static Poly x() { return monomial(CycNum(1), 1); }
  static Poly monomial(const CycNum& c, int degree);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const CycNum& coeff(int k) const;
  const std::vector<CycNum>& coeffs() const { return c_; }
  const CycNum& lc() const { return c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  Poly monic() const;
  Poly derivative() const;
  CycNum eval(const CycNum& x) const;
  std::complex<double> eval(std::complex<double> z, int embedding = 1) const;

  /// p(a*x + b).
  Poly compose_linear(const CycNum& a, const CycNum& b) const;
  /// p(x^2).
  Poly even_embed() const;
  bool is_even() const;
  bool is_odd() const;
  /// q with q(x^2) = p(x); requires is_even().
  Poly halve_even() const;
  /// x^n p(1/x) for n >= degree.
  Poly reversed(int n) const;
  /// Largest k with x^k | p (p nonzero).
  int valuation() const;
  Poly shift_down(int k) const;
  Poly galois(int k) const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  /// Multiplicity of the factor f in this polynomial (this nonzero, deg f >= 1).
  int valuation_by(const Poly& f) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const CycNum& s) const;
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// "[c0;c1;...;cn]" with every coefficient in CycNum canonical form.
  std::string str() const;
  static Poly parse(std::string_view text);
  std::string pretty(const std::string& var) const;

 private:
  void trim();
  std::vector<CycNum> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
/// Squarefree part (monic).
Poly squarefree_part(const Poly& p);

}  // namespace kni::exact
