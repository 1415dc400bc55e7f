#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kni::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact element of the cyclotomic field Q(zeta), zeta = exp(i*pi/12).
///
/// Stored as a0 + a1*zeta + ... + a7*zeta^7 modulo t^8 - t^4 + 1, with the
/// eight coordinates kept over one positive common denominator. The
/// representation is canonical: gcd(numerators, denominator) = 1, so
/// structural equality is field equality.
class CycNum {
 public:
  static constexpr int kDegree = 8;

  CycNum() : den_(1) {}
  CycNum(long value) : den_(1) { num_[0] = value; }  // NOLINT
  CycNum(const Rational& value);                      // NOLINT
  explicit CycNum(const std::array<Rational, kDegree>& coords);

  /// zeta^k for any integer k.
  static CycNum zeta(int k = 1);
  static CycNum i() { return zeta(6); }
  static CycNum sqrt2();   ///< zeta + zeta^3 - zeta^5
  static CycNum sqrt3();   ///< zeta^2 + zeta^22
  static CycNum sqrt_i() { return zeta(3); }
  static CycNum i_sqrt3();  ///< 2 zeta^4 - 1

  Rational coord(int k) const;
  const Integer& numerator(int k) const { return num_[static_cast<std::size_t>(k)]; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  /// True iff coordinates 1..7 vanish.
  bool is_rational() const;
  bool is_integer() const;
  /// Requires is_rational().
  Rational to_rational() const;

  /// Multiplicative inverse; throws DivisionByZero on zero.
  CycNum inverse() const;
  /// Galois automorphism zeta -> zeta^k, gcd(k, 24) = 1.
  CycNum galois(int k) const;
  /// Complex conjugate (the automorphism zeta -> zeta^23).
  CycNum conj() const { return galois(23); }
  /// Real and imaginary parts inside the field: (z + conj z)/2 etc.
  CycNum real_part() const;
  CycNum imag_part() const;

  /// Value under the embedding zeta -> exp(i*pi*k/12).
  std::complex<double> to_complex(int embedding = 1) const;

  /// Canonical text form "a0/b0,...,a7/b7".
  std::string str() const;
  static CycNum parse(std::string_view text);
  /// Human form over the basis 1, sqrt2, sqrt3, sqrt6, i, i*sqrt2, i*sqrt3, i*sqrt6.
  std::string pretty() const;
  /// Parses either the canonical form or a sum of terms such as
  /// "5/2-(1/2)i√3" or "1+i√3". Atoms: i, √2, √3, √6, √i, ζ^k (ASCII
  /// spellings sqrt2, sqrt3, sqrt6, sqrti, zeta^k are accepted too).
  static CycNum parse_expression(std::string_view text);

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o) { return *this *= o.inverse(); }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
  CycNum operator-() const;

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  CycNum pow(long e) const;
  std::size_t hash() const;

 private:
  void normalize();

  std::array<Integer, kDegree> num_;
  Integer den_;
};

}  // namespace kni::exact

template <>
struct std::hash<kni::exact::CycNum> {
  std::size_t operator()(const kni::exact::CycNum& c) const noexcept { return c.hash(); }
};
