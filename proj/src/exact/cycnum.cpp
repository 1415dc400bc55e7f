#include "kni/exact/cycnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kni/errors.hpp"

namespace kni::exact {

namespace {

constexpr int N = CycNum::kDegree;

// Coordinates of t^m mod t^8 - t^4 + 1 for m = 0..23.
const std::array<std::array<int, N>, 24>& power_table() {
  static const auto table = [] {
    std::array<std::array<int, N>, 24> t{};
    std::array<int, 2 * N> work{};
    for (int m = 0; m < 24; ++m) {
      work.fill(0);
      if (m < N) {
        work[static_cast<std::size_t>(m)] = 1;
      } else {
        // t^m = t^(m-8) * t^8 = t^(m-4) - t^(m-8), iterate from the previous row.
        const auto& prev = t[static_cast<std::size_t>(m - 1)];
        std::array<int, N + 1> shifted{};
        for (int k = 0; k < N; ++k) shifted[static_cast<std::size_t>(k + 1)] = prev[static_cast<std::size_t>(k)];
        const int top = shifted[N];
        for (int k = 0; k < N; ++k) work[static_cast<std::size_t>(k)] = shifted[static_cast<std::size_t>(k)];
        work[4] += top;
        work[0] -= top;
      }
      for (int k = 0; k < N; ++k) t[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = work[static_cast<std::size_t>(k)];
    }
    return t;
  }();
  return table;
}

// Gaussian elimination over Q for an N x N system; returns solution or empty.
bool solve_rational(std::array<std::array<Rational, N>, N> m, std::array<Rational, N>& rhs) {
  for (int col = 0; col < N; ++col) {
    int pivot = -1;
    for (int r = col; r < N; ++r) {
      if (sgn(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
    std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(pivot)]);
    const Rational inv = 1 / m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int k = col; k < N; ++k) m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] *= inv;
    rhs[static_cast<std::size_t>(col)] *= inv;
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (sgn(f) == 0) continue;
      for (int k = col; k < N; ++k)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  return true;
}

struct PrettyBasis {
  std::array<CycNum, N> elements;
  std::array<const char*, N> names;
};

const PrettyBasis& pretty_basis() {
  static const PrettyBasis basis = [] {
    const CycNum s2 = CycNum::sqrt2();
    const CycNum s3 = CycNum::sqrt3();
    const CycNum i = CycNum::i();
    PrettyBasis b{{CycNum(1), s2, s3, s2 * s3, i, i * s2, i * s3, i * s2 * s3},
                  {"", "√2", "√3", "√6", "i", "i√2", "i√3", "i√6"}};
    return b;
  }();
  return basis;
}

}  // namespace

CycNum::CycNum(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  den_ = q.get_den();
  num_[0] = q.get_num();
}

CycNum::CycNum(const std::array<Rational, kDegree>& coords) : den_(1) {
  for (const auto& c : coords) den_ = lcm(den_, c.get_den());
  for (int k = 0; k < N; ++k) {
    const auto& c = coords[static_cast<std::size_t>(k)];
    num_[static_cast<std::size_t>(k)] = c.get_num() * (den_ / c.get_den());
  }
  normalize();
}

CycNum CycNum::zeta(int k) {
  const int m = ((k % 24) + 24) % 24;
  CycNum r;
  const auto& row = power_table()[static_cast<std::size_t>(m)];
  for (int j = 0; j < N; ++j) r.num_[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
  return r;
}

CycNum CycNum::sqrt2() { return zeta(1) + zeta(3) - zeta(5); }
CycNum CycNum::sqrt3() { return zeta(2) + zeta(22); }
CycNum CycNum::i_sqrt3() { return 2 * zeta(4) - CycNum(1); }

Rational CycNum::coord(int k) const {
  Rational q(num_[static_cast<std::size_t>(k)], den_);
  q.canonicalize();
  return q;
}

bool CycNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& z) { return sgn(z) == 0; });
}

bool CycNum::is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

bool CycNum::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& z) { return sgn(z) == 0; });
}

bool CycNum::is_integer() const { return is_rational() && den_ == 1; }

Rational CycNum::to_rational() const { return coord(0); }

void CycNum::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& z : num_) z = -z;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& z : num_) {
    if (g == 1) return;
    if (sgn(z) != 0) g = gcd(g, z);
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g == 1) return;
  den_ /= g;
  for (auto& z : num_) z /= g;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (den_ == o.den_) {
    for (int k = 0; k < N; ++k) num_[static_cast<std::size_t>(k)] += o.num_[static_cast<std::size_t>(k)];
  } else {
    for (int k = 0; k < N; ++k)
      num_[static_cast<std::size_t>(k)] = num_[static_cast<std::size_t>(k)] * o.den_ + o.num_[static_cast<std::size_t>(k)] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  if (den_ == o.den_) {
    for (int k = 0; k < N; ++k) num_[static_cast<std::size_t>(k)] -= o.num_[static_cast<std::size_t>(k)];
  } else {
    for (int k = 0; k < N; ++k)
      num_[static_cast<std::size_t>(k)] = num_[static_cast<std::size_t>(k)] * o.den_ - o.num_[static_cast<std::size_t>(k)] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  CycNum r;
  if (a.is_zero() || b.is_zero()) return r;
  std::array<Integer, 2 * N - 1> prod;
  for (int i = 0; i < N; ++i) {
    const auto& ai = a.num_[static_cast<std::size_t>(i)];
    if (sgn(ai) == 0) continue;
    for (int j = 0; j < N; ++j) {
      const auto& bj = b.num_[static_cast<std::size_t>(j)];
      if (sgn(bj) == 0) continue;
      mpz_addmul(prod[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
    }
  }
  // t^k = t^(k-4) - t^(k-8) for k >= 8, reduced from the top.
  for (int k = 2 * N - 2; k >= N; --k) {
    auto& top = prod[static_cast<std::size_t>(k)];
    if (sgn(top) == 0) continue;
    prod[static_cast<std::size_t>(k - 4)] += top;
    prod[static_cast<std::size_t>(k - 8)] -= top;
    top = 0;
  }
  for (int k = 0; k < N; ++k) r.num_[static_cast<std::size_t>(k)] = std::move(prod[static_cast<std::size_t>(k)]);
  r.den_ = a.den_ * b.den_;
  r.normalize();
  return r;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  *this = *this * o;
  return *this;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& z : r.num_) z = -z;
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  return a.den_ == b.den_ && a.num_ == b.num_;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero("CycNum::inverse");
  if (is_rational()) {
    Rational q(den_, num_[0]);
    q.canonicalize();
    return CycNum(q);
  }
  // Product of the other seven conjugates over the (rational) norm.
  CycNum others(1);
  for (int k : {5, 7, 11, 13, 17, 19, 23}) others = others * galois(k);
  const CycNum norm = *this * others;
  if (!norm.is_rational() || norm.is_zero()) throw DivisionByZero("CycNum::inverse (singular)");
  return others * CycNum(Rational(1) / norm.to_rational());
}

CycNum CycNum::galois(int k) const {
  CycNum r;
  r.den_ = den_;
  const auto& table = power_table();
  for (int j = 0; j < N; ++j) {
    const auto& a = num_[static_cast<std::size_t>(j)];
    if (sgn(a) == 0) continue;
    const int m = (((j * k) % 24) + 24) % 24;
    const auto& row = table[static_cast<std::size_t>(m)];
    for (int t = 0; t < N; ++t) {
      const int c = row[static_cast<std::size_t>(t)];
      if (c != 0) r.num_[static_cast<std::size_t>(t)] += a * c;
    }
  }
  r.normalize();
  return r;
}

CycNum CycNum::real_part() const { return (*this + conj()) * CycNum(Rational(1, 2)); }

CycNum CycNum::imag_part() const {
  return (*this - conj()) * CycNum(Rational(1, 2)) * (-i());
}

std::complex<double> CycNum::to_complex(int embedding) const {
  std::complex<double> acc = 0;
  const double dden = den_.get_d();
  for (int j = N - 1; j >= 0; --j) {
    const double angle = std::numbers::pi * static_cast<double>(j * embedding) / 12.0;
    acc += (num_[static_cast<std::size_t>(j)].get_d() / dden) * std::polar(1.0, angle);
  }
  return acc;
}

std::string CycNum::str() const {
  std::string out;
  for (int k = 0; k < N; ++k) {
    if (k) out += ',';
    const Rational q = coord(k);
    out += q.get_num().get_str();
    out += '/';
    out += q.get_den().get_str();
  }
  return out;
}

CycNum CycNum::parse(std::string_view text) {
  std::array<Rational, N> coords;
  std::size_t pos = 0;
  for (int k = 0; k < N; ++k) {
    const std::size_t end = text.find(',', pos);
    if ((k < N - 1) != (end != std::string_view::npos))
      throw ParseError("CycNum: expected 8 comma-separated rationals", pos);
    const std::string field(text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos));
    Rational q;
    if (field.empty() || q.set_str(field, 10) != 0 || sgn(q.get_den()) == 0)
      throw ParseError("CycNum: malformed rational '" + field + "'", pos);
    q.canonicalize();
    coords[static_cast<std::size_t>(k)] = q;
    pos = end == std::string_view::npos ? text.size() : end + 1;
  }
  return CycNum(coords);
}

std::string CycNum::pretty() const {
  // Solve for coordinates over the basis 1, √2, √3, √6, i, i√2, i√3, i√6.
  static const auto inverse_matrix = [] {
    const auto& b = pretty_basis();
    std::array<std::array<Rational, N>, N> inv;
    for (int e = 0; e < N; ++e) {
      std::array<std::array<Rational, N>, N> m;
      for (int j = 0; j < N; ++j)
        for (int r = 0; r < N; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = b.elements[static_cast<std::size_t>(j)].coord(r);
      std::array<Rational, N> rhs;
      for (int r = 0; r < N; ++r) rhs[static_cast<std::size_t>(r)] = (r == e) ? 1 : 0;
      solve_rational(m, rhs);
      for (int j = 0; j < N; ++j) inv[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] = rhs[static_cast<std::size_t>(j)];
    }
    return inv;
  }();
  const auto& names = pretty_basis().names;
  std::string out;
  for (int j = 0; j < N; ++j) {
    Rational c = 0;
    for (int e = 0; e < N; ++e) c += inverse_matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] * coord(e);
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string name = names[static_cast<std::size_t>(j)];
    if (name.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += name;
    } else if (mag.get_den() == 1) {
      out += mag.get_str() + name;
    } else {
      out += "(" + mag.get_str() + ")" + name;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  CycNum parse() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    CycNum acc = term();
    for (;;) {
      skip();
      if (at_end()) break;
      if (accept("+")) {
        acc += term();
      } else if (accept("-") || accept("−")) {
        acc -= term();
      } else {
        throw ParseError("expected '+' or '-'", pos_);
      }
    }
    return acc;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Rational rational() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    Rational q;
    if (q.set_str(std::string(s_.substr(start, pos_ - start)), 10) != 0 || sgn(q.get_den()) == 0)
      throw ParseError("malformed rational", start);
    q.canonicalize();
    return q;
  }

  bool atom(CycNum& out) {
    skip();
    if (accept("*") || accept("·")) skip();
    if (accept("√") || accept("sqrt")) {
      const bool paren = accept("(");
      CycNum v;
      if (accept("2")) {
        v = CycNum::sqrt2();
      } else if (accept("3")) {
        v = CycNum::sqrt3();
      } else if (accept("6")) {
        v = CycNum::sqrt2() * CycNum::sqrt3();
      } else if (accept("i")) {
        v = CycNum::sqrt_i();
      } else {
        throw ParseError("unsupported radical", pos_);
      }
      if (paren && !accept(")")) throw ParseError("expected ')'", pos_);
      out = v;
      return true;
    }
    if (accept("ζ") || accept("zeta")) {
      int k = 1;
      if (accept("^")) {
        const Rational e = rational();
        if (e.get_den() != 1) throw ParseError("integer exponent expected", pos_);
        k = static_cast<int>(e.get_num().get_si());
      }
      out = CycNum::zeta(k);
      return true;
    }
    if (accept("i")) {
      out = CycNum::i();
      return true;
    }
    return false;
  }

  CycNum term() {
    skip();
    bool neg = false;
    while (accept("-") || accept("−")) neg = !neg;
    accept("+");
    CycNum value(1);
    bool any = false;
    skip();
    if (accept("(")) {
      bool inner_neg = false;
      while (accept("-") || accept("−")) inner_neg = !inner_neg;
      Rational q = rational();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      value = CycNum(inner_neg ? Rational(-q) : q);
      any = true;
    } else if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = CycNum(rational());
      any = true;
    }
    CycNum a;
    while (atom(a)) {
      value *= a;
      any = true;
    }
    if (!any) throw ParseError("expected a term", pos_);
    return neg ? -value : value;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

CycNum CycNum::parse_expression(std::string_view text) {
  if (text.find(',') != std::string_view::npos) return parse(text);
  return ExprParser(text).parse();
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::size_t CycNum::hash() const {
  std::size_t h = std::hash<std::string>{}(den_.get_str(16));
  for (const auto& z : num_) h = h * 1000003u ^ std::hash<std::string>{}(z.get_str(16));
  return h;
}

}  // namespace kni::exact
