#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "kni/exact/poly.hpp"

namespace kni::exact {

/// Sparse multivariate polynomial over CycNum in a fixed number of variables.
/// Variables are addressed by index; names are only used for printing.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {}
  MPoly(int nvars, const CycNum& c);
  static MPoly var(int nvars, int k);
  static MPoly monomial(const Exponents& e, const CycNum& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial.
  CycNum constant_term() const;
  const std::map<Exponents, CycNum>& terms() const { return terms_; }

  int degree_in(int k) const;
  MPoly derivative(int k) const;
  /// Sum of the terms with x_k^e, with x_k removed.
  MPoly coeff_in(int k, int e) const;
  /// Replace x_k by value (value must not involve x_k).
  MPoly substitute(int k, const MPoly& value) const;
  /// Univariate view in x_k; every other variable must be absent.
  Poly to_univariate(int k) const;
  static MPoly from_univariate(const Poly& p, int nvars, int k);

  CycNum eval(const std::vector<CycNum>& point) const;
  std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator*(const CycNum& s) const;
  MPoly operator-() const;
  MPoly pow(unsigned e) const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string pretty(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& e, const CycNum& c);
  int nvars_ = 0;
  std::map<Exponents, CycNum> terms_;
};

/// Quotient of two MPoly. No gcd is taken; zero is tested on the numerator.
class MRat {
 public:
  MRat() = default;
  explicit MRat(int nvars) : num_(nvars), den_(nvars, CycNum(1)) {}
  MRat(const MPoly& num);  // NOLINT
  MRat(const MPoly& num, const MPoly& den);
  static MRat constant(int nvars, const CycNum& c) { return MRat(MPoly(nvars, c)); }
  static MRat var(int nvars, int k) { return MRat(MPoly::var(nvars, k)); }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  MRat derivative(int k) const;
  MRat pow(int e) const;
  MRat inverse() const;
  CycNum eval(const std::vector<CycNum>& point) const;

  MRat& operator+=(const MRat& o);
  MRat& operator-=(const MRat& o);
  MRat& operator*=(const MRat& o);
  MRat& operator/=(const MRat& o) { return *this *= o.inverse(); }
  friend MRat operator+(MRat a, const MRat& b) { return a += b; }
  friend MRat operator-(MRat a, const MRat& b) { return a -= b; }
  friend MRat operator*(MRat a, const MRat& b) { return a *= b; }
  friend MRat operator/(MRat a, const MRat& b) { return a /= b; }
  MRat operator-() const { return MRat(-num_, den_); }
  /// Cross-multiplied equality.
  friend bool operator==(const MRat& a, const MRat& b) { return (a - b).is_zero(); }

 private:
  void tidy();
  MPoly num_;
  MPoly den_;
};

}  // namespace kni::exact
