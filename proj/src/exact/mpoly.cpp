#include "kni/exact/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "kni/errors.hpp"

namespace kni::exact {

namespace {

int common_nvars(int a, int b) {
  if (a == b || b == 0) return a;
  if (a == 0) return b;
  throw Error("MPoly: variable count mismatch");
}

MPoly promote(const MPoly& p, int nvars) {
  if (p.nvars() == nvars) return p;
  return MPoly(nvars, p.constant_term());
}

}  // namespace

MPoly::MPoly(int nvars, const CycNum& c) : nvars_(nvars) {
  if (!c.is_zero()) terms_.emplace(Exponents(static_cast<std::size_t>(nvars), 0), c);
}

MPoly MPoly::monomial(const Exponents& e, const CycNum& c) {
  MPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

MPoly MPoly::var(int nvars, int k) {
  MPoly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(k)] = 1;
  p.terms_.emplace(e, CycNum(1));
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

CycNum MPoly::constant_term() const {
  const auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
  return it == terms_.end() ? CycNum(0) : it->second;
}

void MPoly::add_term(const Exponents& e, const CycNum& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MPoly::degree_in(int k) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(k)]);
  return d;
}

MPoly MPoly::derivative(int k) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    const int d = e[static_cast<std::size_t>(k)];
    if (d == 0) continue;
    Exponents f = e;
    --f[static_cast<std::size_t>(k)];
    r.add_term(f, c * CycNum(d));
  }
  return r;
}

MPoly MPoly::coeff_in(int k, int deg) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<std::size_t>(k)] != deg) continue;
    Exponents f = e;
    f[static_cast<std::size_t>(k)] = 0;
    r.add_term(f, c);
  }
  return r;
}

MPoly MPoly::substitute(int k, const MPoly& value) const {
  const MPoly v = promote(value, nvars_);
  std::vector<MPoly> powers{MPoly(nvars_, CycNum(1))};
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    const auto d = static_cast<std::size_t>(e[static_cast<std::size_t>(k)]);
    while (powers.size() <= d) powers.push_back(powers.back() * v);
    Exponents f = e;
    f[static_cast<std::size_t>(k)] = 0;
    MPoly mono(nvars_);
    mono.terms_.emplace(f, c);
    r += mono * powers[d];
  }
  return r;
}

Poly MPoly::to_univariate(int k) const {
  std::vector<CycNum> c(static_cast<std::size_t>(std::max(degree_in(k), 0)) + 1);
  for (const auto& [e, v] : terms_) {
    for (int j = 0; j < nvars_; ++j)
      if (j != k && e[static_cast<std::size_t>(j)] != 0) throw Error("MPoly::to_univariate: other variables present");
    c[static_cast<std::size_t>(e[static_cast<std::size_t>(k)])] = v;
  }
  return Poly(c);
}

MPoly MPoly::from_univariate(const Poly& p, int nvars, int k) {
  MPoly r(nvars);
  for (int d = 0; d <= p.degree(); ++d) {
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(k)] = d;
    r.add_term(e, p.coeff(d));
  }
  return r;
}

CycNum MPoly::eval(const std::vector<CycNum>& point) const {
  CycNum s;
  for (const auto& [e, c] : terms_) {
    CycNum t = c;
    for (int j = 0; j < nvars_; ++j)
      if (e[static_cast<std::size_t>(j)]) t *= point[static_cast<std::size_t>(j)].pow(e[static_cast<std::size_t>(j)]);
    s += t;
  }
  return s;
}

std::complex<double> MPoly::eval(const std::vector<std::complex<double>>& point) const {
  std::complex<double> s = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int j = 0; j < nvars_; ++j)
      if (e[static_cast<std::size_t>(j)]) t *= std::pow(point[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(j)]);
    s += t;
  }
  return s;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  const int n = common_nvars(nvars_, o.nvars_);
  if (n != nvars_) *this = promote(*this, n);
  for (const auto& [e, c] : promote(o, n).terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  const int n = common_nvars(a.nvars_, b.nvars_);
  const MPoly pa = promote(a, n), pb = promote(b, n);
  MPoly r(n);
  MPoly::Exponents e(static_cast<std::size_t>(n));
  for (const auto& [ea, ca] : pa.terms_)
    for (const auto& [eb, cb] : pb.terms_) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::operator*(const CycNum& s) const {
  MPoly r(nvars_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

MPoly MPoly::operator-() const { return *this * CycNum(-1); }

MPoly MPoly::pow(unsigned e) const {
  MPoly r(nvars_, CycNum(1)), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

std::string MPoly::pretty(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.pretty() << ")";
    for (int j = 0; j < nvars_; ++j) {
      const int d = it->first[static_cast<std::size_t>(j)];
      if (d == 0) continue;
      os << "*" << names[static_cast<std::size_t>(j)];
      if (d != 1) os << "^" << d;
    }
  }
  return os.str();
}

MRat::MRat(const MPoly& num) : num_(num), den_(num.nvars(), CycNum(1)) {}

MRat::MRat(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero("MRat constructor");
  tidy();
}

void MRat::tidy() {
  const int n = common_nvars(num_.nvars(), den_.nvars());
  num_ = promote(num_, n);
  den_ = promote(den_, n);
  if (num_.is_zero()) {
    den_ = MPoly(n, CycNum(1));
    return;
  }
  // Cancel the common monomial factor.
  MPoly::Exponents lo(static_cast<std::size_t>(n), 1 << 30);
  for (const auto* p : {&num_, &den_})
    for (const auto& [e, c] : p->terms())
      for (std::size_t j = 0; j < lo.size(); ++j) lo[j] = std::min(lo[j], e[j]);
  if (std::any_of(lo.begin(), lo.end(), [](int v) { return v > 0; })) {
    auto shift = [&](const MPoly& p) {
      MPoly r(n);
      for (const auto& [e, c] : p.terms()) {
        MPoly::Exponents f = e;
        for (std::size_t j = 0; j < f.size(); ++j) f[j] -= lo[j];
        r += MPoly::monomial(f, c);
      }
      return r;
    };
    num_ = shift(num_);
    den_ = shift(den_);
  }
  // Normalize so the leading denominator coefficient is 1.
  const CycNum lead = den_.terms().rbegin()->second;
  if (!lead.is_one()) {
    const CycNum inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

MRat MRat::derivative(int k) const {
  const MPoly dn = num_.derivative(k);
  if (den_.is_constant()) return MRat(dn, den_);
  return MRat(dn * den_ - num_ * den_.derivative(k), den_ * den_);
}

MRat MRat::inverse() const {
  if (is_zero()) throw DivisionByZero("MRat::inverse");
  return MRat(den_, num_);
}

MRat MRat::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return MRat(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

CycNum MRat::eval(const std::vector<CycNum>& point) const {
  const CycNum d = den_.eval(point);
  if (d.is_zero()) throw SingularEvaluation("MRat::eval at a pole");
  return num_.eval(point) * d.inverse();
}

MRat& MRat::operator+=(const MRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) return *this = MRat(num_ + o.num_, den_);
  return *this = MRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

MRat& MRat::operator-=(const MRat& o) { return *this += -o; }

MRat& MRat::operator*=(const MRat& o) {
  if (is_zero() || o.is_zero()) return *this = MRat(MPoly(common_nvars(nvars(), o.nvars())));
  return *this = MRat(num_ * o.num_, den_ * o.den_);
}

}  // namespace kni::exact
