#include "kni/exact/poly.hpp"

#include <algorithm>

#include "kni/errors.hpp"

namespace kni::exact {

Poly::Poly(const CycNum& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<CycNum> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const CycNum& c, int degree) {
  Poly p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(degree) + 1, CycNum());
  p.c_.back() = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const CycNum& Poly::coeff(int k) const {
  static const CycNum zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(k)];
}

Poly Poly::monic() const {
  if (is_zero() || lc().is_one()) return *this;
  return *this * lc().inverse();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<CycNum> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * CycNum(static_cast<long>(k));
  return Poly(std::move(d));
}

CycNum Poly::eval(const CycNum& x) const {
  CycNum acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Poly::eval(std::complex<double> z, int embedding) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex(embedding);
  return acc;
}

Poly Poly::compose_linear(const CycNum& a, const CycNum& b) const {
  const Poly lin(std::vector<CycNum>{b, a});
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
  return acc;
}

Poly Poly::even_embed() const {
  if (is_zero()) return {};
  std::vector<CycNum> e(2 * c_.size() - 1);
  for (std::size_t k = 0; k < c_.size(); ++k) e[2 * k] = c_[k];
  return Poly(std::move(e));
}

bool Poly::is_even() const {
  for (std::size_t k = 1; k < c_.size(); k += 2)
    if (!c_[k].is_zero()) return false;
  return true;
}

bool Poly::is_odd() const {
  for (std::size_t k = 0; k < c_.size(); k += 2)
    if (!c_[k].is_zero()) return false;
  return true;
}

Poly Poly::halve_even() const {
  if (!is_even()) throw Error("Poly::halve_even: polynomial has odd terms");
  std::vector<CycNum> h;
  for (std::size_t k = 0; k < c_.size(); k += 2) h.push_back(c_[k]);
  return Poly(std::move(h));
}

Poly Poly::reversed(int n) const {
  if (n < degree()) throw Error("Poly::reversed: n below degree");
  std::vector<CycNum> r(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) r[static_cast<std::size_t>(n) - k] = c_[k];
  return Poly(std::move(r));
}

int Poly::valuation() const {
  if (is_zero()) throw Error("Poly::valuation of zero");
  int k = 0;
  while (c_[static_cast<std::size_t>(k)].is_zero()) ++k;
  return k;
}

Poly Poly::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k > degree()) return {};
  return Poly(std::vector<CycNum>(c_.begin() + k, c_.end()));
}

Poly Poly::galois(int k) const {
  std::vector<CycNum> g;
  g.reserve(c_.size());
  for (const auto& c : c_) g.push_back(c.galois(k));
  return Poly(std::move(g));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero("Poly::divmod");
  if (degree() < d.degree()) return {Poly(), *this};
  const CycNum inv = d.lc().inverse();
  std::vector<CycNum> rem = c_;
  const int dd = d.degree();
  std::vector<CycNum> q(static_cast<std::size_t>(degree() - dd) + 1);
  for (int k = degree(); k >= dd; --k) {
    const CycNum& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    const CycNum f = top * inv;
    q[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) {
      const CycNum& dj = d.c_[static_cast<std::size_t>(j)];
      if (dj.is_zero()) continue;
      rem[static_cast<std::size_t>(k - dd + j)] -= f * dj;
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

int Poly::valuation_by(const Poly& f) const {
  if (is_zero()) throw Error("Poly::valuation_by of zero");
  if (f.degree() < 1) throw Error("Poly::valuation_by: constant factor");
  int k = 0;
  Poly cur = *this;
  for (;;) {
    auto [q, r] = cur.divmod(f);
    if (!r.is_zero()) return k;
    cur = std::move(q);
    ++k;
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<CycNum> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Poly(std::move(r));
}

Poly Poly::operator*(const CycNum& s) const {
  if (s.is_zero()) return {};
  Poly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string Poly::str() const {
  std::string out = "[";
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) out += ';';
    out += c_[k].str();
  }
  return out + "]";
}

Poly Poly::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("Poly: expected '[...]'", 0);
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<CycNum> coeffs;
  if (body.empty()) return {};
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = body.find(';', pos);
    const auto field = body.substr(pos, end == std::string_view::npos ? body.size() - pos : end - pos);
    try {
      coeffs.push_back(CycNum::parse(field));
    } catch (const ParseError& e) {
      throw ParseError(std::string("Poly coefficient: ") + e.what(), pos + 1 + e.position());
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  Poly p(std::move(coeffs));
  return p;
}

std::string Poly::pretty(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const CycNum& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty()) {
      out += "(" + c.pretty() + ")";
    } else if (c.is_one()) {
      out += mono;
    } else {
      out += "(" + c.pretty() + ")" + mono;
    }
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() < 1) return p.monic();
  const Poly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

}  // namespace kni::exact
