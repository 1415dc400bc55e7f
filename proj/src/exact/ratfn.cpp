#include "kni/exact/ratfn.hpp"

#include "kni/errors.hpp"

namespace kni::exact {

std::string Chart::tag() const {
  if (kind == ChartKind::HalfInvW) return var == "w" ? "w" : "halfw:" + var;
  if (var == "x1") return "x1";
  return "plain:" + var;
}

Chart Chart::from_tag(const std::string& tag) {
  if (tag == "x1") return x1();
  if (tag == "w") return w();
  if (tag.rfind("plain:", 0) == 0 && tag.size() > 6) return plain(tag.substr(6));
  if (tag.rfind("halfw:", 0) == 0 && tag.size() > 6) return {ChartKind::HalfInvW, tag.substr(6)};
  throw ParseError("unknown chart tag '" + tag + "'", 0);
}

RatFn::RatFn(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero("RatFn constructor");
  canonicalize();
}

void RatFn::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree() > 0) {
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  if (!den_.lc().is_one()) {
    const CycNum inv = den_.lc().inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

CycNum RatFn::constant() const {
  if (!is_constant()) throw Error("RatFn::constant: not a constant");
  return num_.coeff(0) * den_.coeff(0).inverse();
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw DivisionByZero("RatFn::inverse");
  RatFn r(den_, num_, Canonical{});
  const CycNum inv = r.den_.lc().inverse();
  r.num_ = r.num_ * inv;
  r.den_ = r.den_ * inv;
  return r;
}

RatFn RatFn::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFn result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

RatFn RatFn::derivative() const {
  if (den_.is_constant()) return RatFn(num_.derivative(), den_, Canonical{});
  // (n'd - nd')/d^2, with the common factor gcd(d, d') removed up front.
  const Poly dd = den_.derivative();
  const Poly g = gcd(den_, dd);
  const Poly d_over_g = den_.divmod(g).first;
  const Poly dd_over_g = dd.divmod(g).first;
  const Poly top = num_.derivative() * d_over_g - num_ * dd_over_g;
  return RatFn(top, den_ * d_over_g);
}

RatFn RatFn::derive(const Chart& chart) const {
  RatFn d = derivative();
  if (chart.kind == ChartKind::Plain) return d;
  return d * RatFn(Poly(1), Poly::monomial(CycNum(2), 1));
}

CycNum RatFn::eval(const CycNum& x) const {
  const CycNum d = den_.eval(x);
  if (d.is_zero()) throw SingularEvaluation("RatFn::eval at a pole");
  return num_.eval(x) * d.inverse();
}

std::complex<double> RatFn::eval(std::complex<double> z, int embedding) const {
  const std::complex<double> d = den_.eval(z, embedding);
  if (d == 0.0) throw SingularEvaluation("RatFn::eval at a pole");
  return num_.eval(z, embedding) / d;
}

RatFn RatFn::compose_linear(const CycNum& a, const CycNum& b) const {
  return RatFn(num_.compose_linear(a, b), den_.compose_linear(a, b));
}

RatFn RatFn::even_embed() const {
  return RatFn(num_.even_embed(), den_.even_embed(), Canonical{});
}

bool RatFn::is_even() const { return num_.is_even() && den_.is_even(); }

bool RatFn::is_odd() const {
  return (num_.is_odd() && den_.is_even()) || (num_.is_even() && den_.is_odd() && !num_.is_zero());
}

RatFn RatFn::halve_even() const {
  if (!is_even()) throw Error("RatFn::halve_even: function is not even");
  return RatFn(num_.halve_even(), den_.halve_even(), Canonical{});
}

RatFn RatFn::invert_variable() const {
  if (is_zero()) return {};
  const int n = std::max(num_.degree(), den_.degree());
  return RatFn(num_.reversed(n), den_.reversed(n));
}

int RatFn::valuation() const {
  if (is_zero()) throw Error("RatFn::valuation of zero");
  return num_.valuation() - den_.valuation();
}

int RatFn::valuation_by(const Poly& fac) const {
  if (is_zero()) throw Error("RatFn::valuation_by of zero");
  return num_.valuation_by(fac) - den_.valuation_by(fac);
}

CycNum RatFn::leading_at_zero() const {
  const Poly n = num_.shift_down(num_.valuation());
  const Poly d = den_.shift_down(den_.valuation());
  return n.coeff(0) * d.coeff(0).inverse();
}

RatFn RatFn::galois(int k) const { return RatFn(num_.galois(k), den_.galois(k)); }

RatFn& RatFn::operator+=(const RatFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    *this = RatFn(num_ + o.num_, den_);
    return *this;
  }
  const Poly g = gcd(den_, o.den_);
  if (g.degree() <= 0) {
    Poly n = num_ * o.den_ + o.num_ * den_;
    if (n.is_zero()) return *this = RatFn();
    *this = RatFn(std::move(n), den_ * o.den_, Canonical{});
    return *this;
  }
  const Poly b1 = den_.divmod(g).first;
  const Poly d1 = o.den_.divmod(g).first;
  Poly t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = RatFn();
  const Poly g2 = gcd(t, g);
  Poly den = b1 * o.den_;
  if (g2.degree() > 0) {
    t = t.divmod(g2).first;
    den = den.divmod(g2).first;
  }
  *this = RatFn(std::move(t), std::move(den), Canonical{});
  return *this;
}

RatFn& RatFn::operator-=(const RatFn& o) { return *this += -o; }

RatFn& RatFn::operator*=(const RatFn& o) {
  if (is_zero() || o.is_zero()) return *this = RatFn();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Poly a = num_, b = den_, c = o.num_, d = o.den_;
  const Poly g1 = gcd(a, d);
  if (g1.degree() > 0) {
    a = a.divmod(g1).first;
    d = d.divmod(g1).first;
  }
  const Poly g2 = gcd(c, b);
  if (g2.degree() > 0) {
    c = c.divmod(g2).first;
    b = b.divmod(g2).first;
  }
  *this = RatFn(a * c, b * d, Canonical{});
  return *this;
}

RatFn& RatFn::operator/=(const RatFn& o) { return *this *= o.inverse(); }

RatFn RatFn::operator-() const { return RatFn(-num_, den_, Canonical{}); }

std::string RatFn::str() const { return num_.str() + " ÷ " + den_.str(); }

RatFn RatFn::parse(std::string_view text) {
  static constexpr std::string_view kSep = "÷";
  const std::size_t at = text.find(kSep);
  if (at == std::string_view::npos) throw ParseError("RatFn: missing '÷'", 0);
  auto strip = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  const auto lhs = strip(text.substr(0, at));
  const auto rhs = strip(text.substr(at + kSep.size()));
  Poly n, d;
  try {
    n = Poly::parse(lhs);
  } catch (const ParseError& e) {
    throw ParseError(std::string("RatFn numerator: ") + e.what(), e.position());
  }
  try {
    d = Poly::parse(rhs);
  } catch (const ParseError& e) {
    throw ParseError(std::string("RatFn denominator: ") + e.what(), at + kSep.size() + e.position());
  }
  if (d.is_zero()) throw ParseError("RatFn: zero denominator", at);
  return RatFn(n, d);
}

std::string RatFn::pretty(const std::string& var) const {
  if (den_.degree() <= 0) return num_.pretty(var);
  return "(" + num_.pretty(var) + ") / (" + den_.pretty(var) + ")";
}

}  // namespace kni::exact
