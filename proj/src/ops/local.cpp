#include "kni/ops/local.hpp"

#include <algorithm>

#include "kni/exact/roots.hpp"

namespace kni::ops {

namespace {

// rho^(k falling) as polynomials in rho for k = 0..n.
std::vector<Poly> falling_factorials(int n) {
  std::vector<Poly> f{Poly(1)};
  for (int k = 0; k < n; ++k) f.push_back(f.back() * (Poly::x() - Poly(CycNum(k))));
  return f;
}

CycNum falling(const CycNum& x, int k) {
  CycNum r(1);
  for (int i = 0; i < k; ++i) r *= x - CycNum(i);
  return r;
}

}  // namespace

DiffOp localize(const DiffOp& l, const Point& p) {
  if (l.chart().kind != exact::ChartKind::Plain) throw ChartMismatch("local analysis needs a plain chart");
  const Chart t = Chart::plain("t");
  if (!p.infinite) {
    std::vector<RatFn> c;
    for (const auto& a : l.coeffs()) c.push_back(a.compose_linear(CycNum(1), p.value));
    return DiffOp(t, std::move(c));
  }
  // x = 1/t, D_x = -t^2 D_t
  const DiffOp dx(t, {RatFn(0), RatFn(Poly::monomial(CycNum(-1), 2))});
  DiffOp pw = DiffOp::scalar(t, RatFn(1));
  DiffOp result(t, {});
  for (int k = 0; k <= l.order(); ++k) {
    if (k) pw = op_mul(dx, pw);
    result += l.coeffs()[static_cast<std::size_t>(k)].invert_variable() * pw;
  }
  return result;
}

IndicialData indicial_data(const DiffOp& l, const Point& p) {
  IndicialData out;
  out.point = p;
  const DiffOp m = localize(l, p).monic();
  const int n = m.order();
  const auto ff = falling_factorials(n);
  Poly ind = ff[static_cast<std::size_t>(n)];
  for (int k = 0; k < n; ++k) {
    const RatFn& b = m.coeffs()[static_cast<std::size_t>(k)];
    if (b.is_zero()) continue;
    const int v = b.valuation();
    if (v < k - n) {
      out.regular = false;
      out.polynomial = Poly();
      return out;
    }
    if (v == k - n) ind += ff[static_cast<std::size_t>(k)] * b.leading_at_zero();
  }
  out.polynomial = ind;
  Poly rest = ind;
  for (const auto& r : exact::roots_in_field(ind)) {
    out.exponents.push_back({true, r.value, r.value.to_complex(), r.multiplicity});
    const Poly lin(std::vector<CycNum>{-r.value, CycNum(1)});
    for (int k = 0; k < r.multiplicity; ++k) rest = rest.divmod(lin).first;
  }
  if (rest.degree() > 0)
    for (const auto& z : exact::numeric_roots(rest)) out.exponents.push_back({false, CycNum(0), z, 1});
  std::sort(out.exponents.begin(), out.exponents.end(), [](const Exponent& a, const Exponent& b) {
    if (a.numeric.real() != b.numeric.real()) return a.numeric.real() < b.numeric.real();
    return a.numeric.imag() < b.numeric.imag();
  });
  return out;
}

std::vector<CycNum> finite_singularities(const DiffOp& l, int* numeric_only) {
  const DiffOp m = l.monic();
  Poly s(1);
  for (const auto& c : m.coeffs()) {
    if (c.den().degree() < 1) continue;
    const Poly d = exact::squarefree_part(c.den());
    s = s * d.divmod(exact::gcd(s, d)).first;
  }
  std::vector<CycNum> out;
  int found = 0;
  for (const auto& r : exact::roots_in_field(s)) {
    out.push_back(r.value);
    ++found;
  }
  if (numeric_only) *numeric_only = std::max(0, s.degree() - found);
  std::sort(out.begin(), out.end(), [](const CycNum& a, const CycNum& b) { return a.str() < b.str(); });
  return out;
}

bool SeriesResidual::vanishes() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const CycNum& c) { return c.is_zero(); });
}

std::optional<int> SeriesResidual::first_nonzero() const {
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) return first_offset + static_cast<int>(k);
  return std::nullopt;
}

SeriesResidual series_check(const DiffOp& l, const FormalSeries& s) {
  const DiffOp t = localize(l, s.point);
  // Clear denominators.
  Poly common(1);
  for (const auto& c : t.coeffs()) common = common * c.den().divmod(exact::gcd(common, c.den())).first;
  std::vector<Poly> p;
  int sigma = -(1 << 30);
  for (int k = 0; k <= t.order(); ++k) {
    const RatFn& c = t.coeffs()[static_cast<std::size_t>(k)];
    p.push_back(c.num() * common.divmod(c.den()).first);
    if (!p.back().is_zero()) sigma = std::max(sigma, k - p.back().valuation());
  }
  const int n_terms = s.order();
  SeriesResidual res;
  res.first_offset = -sigma;
  for (int m = -sigma; m <= n_terms - sigma; ++m) {
    CycNum acc;
    for (int k = 0; k <= t.order(); ++k) {
      const Poly& pk = p[static_cast<std::size_t>(k)];
      for (int e = 0; e <= pk.degree(); ++e) {
        const int j = m - e + k;
        if (j < 0 || j > n_terms || pk.coeff(e).is_zero()) continue;
        acc += pk.coeff(e) * falling(s.rho + CycNum(j), k) * s.coeffs[static_cast<std::size_t>(j)];
      }
    }
    res.coeffs.push_back(acc);
  }
  return res;
}

std::vector<CycNum> hypergeometric_coefficients(const CycNum& a, const CycNum& b, const CycNum& c, int n) {
  std::vector<CycNum> out{CycNum(1)};
  for (int k = 0; k < n; ++k) {
    const CycNum den = (c + CycNum(k)) * CycNum(k + 1);
    if (den.is_zero()) throw DivisionByZero("hypergeometric series: c is a non-positive integer");
    out.push_back(out.back() * (a + CycNum(k)) * (b + CycNum(k)) * den.inverse());
  }
  return out;
}

}  // namespace kni::ops
