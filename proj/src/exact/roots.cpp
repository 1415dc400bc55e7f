#include "kni/exact/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

namespace kni::exact {

namespace {

using cd = std::complex<double>;

constexpr std::array<int, 4> kHalfGalois = {1, 5, 7, 11};

std::optional<Rational> rationalize(double v, long max_den = 1000000, double tol = 1e-9) {
  if (!std::isfinite(v)) return std::nullopt;
  const double scale = std::max(1.0, std::abs(v));
  // Continued-fraction convergents h/k.
  long double x = v;
  long double h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    const long double a = std::floor(x);
    const long double h2 = a * h1 + h0;
    const long double k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1 / k1) - v) <= tol * scale) {
      return Rational(Integer(static_cast<long>(h1)), Integer(static_cast<long>(k1)));
    }
    const long double frac = x - a;
    if (frac < 1e-18L) break;
    x = 1.0L / frac;
  }
  return std::nullopt;
}

const Eigen::Matrix<cd, 8, 8>& embedding_inverse() {
  static const Eigen::Matrix<cd, 8, 8> inv = [] {
    Eigen::Matrix<cd, 8, 8> v;
    const std::array<int, 8> ks = {1, 5, 7, 11, 13, 17, 19, 23};
    for (int r = 0; r < 8; ++r)
      for (int j = 0; j < 8; ++j) v(r, j) = std::polar(1.0, std::numbers::pi * j * ks[static_cast<std::size_t>(r)] / 12.0);
    return Eigen::Matrix<cd, 8, 8>(v.inverse());
  }();
  return inv;
}

}  // namespace

std::vector<cd> numeric_roots(const Poly& p, int embedding) {
  const int n = p.degree();
  if (n < 1) return {};
  std::vector<cd> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = p.coeff(k).to_complex(embedding);
  std::vector<cd> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) comp(k, n - 1) = -c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(n)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  for (int k = 0; k < n; ++k) {
    cd z = solver.eigenvalues()(k);
    // Newton polish.
    for (int it = 0; it < 4; ++it) {
      cd f = 0, df = 0;
      for (int j = n; j >= 0; --j) {
        df = df * z + f;
        f = f * z + c[static_cast<std::size_t>(j)];
      }
      if (std::abs(df) < 1e-300) break;
      const cd step = f / df;
      z -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<FieldRoot> roots_in_field(const Poly& p) {
  std::vector<FieldRoot> out;
  if (p.degree() < 1) return out;
  const Poly sq = squarefree_part(p);
  std::vector<CycNum> found;
  if (sq.degree() == 1) {
    found.push_back(-sq.coeff(0) * sq.coeff(1).inverse());
  } else {
    std::array<std::vector<cd>, 4> cand;
    for (std::size_t g = 0; g < 4; ++g) cand[g] = numeric_roots(sq, kHalfGalois[g]);
    const auto& inv = embedding_inverse();
    const std::size_t d = cand[0].size();
    std::array<std::size_t, 4> idx{};
    for (;;) {
      Eigen::Matrix<cd, 8, 1> v;
      for (std::size_t g = 0; g < 4; ++g) {
        v(static_cast<int>(g)) = cand[g][idx[g]];
        v(static_cast<int>(7 - g)) = std::conj(cand[g][idx[g]]);
      }
      const Eigen::Matrix<cd, 8, 1> a = inv * v;
      std::array<Rational, 8> coords;
      bool ok = true;
      for (int j = 0; j < 8 && ok; ++j) {
        if (std::abs(a(j).imag()) > 1e-6 * std::max(1.0, std::abs(a(j)))) {
          ok = false;
          break;
        }
        auto q = rationalize(a(j).real());
        if (!q) ok = false;
        else coords[static_cast<std::size_t>(j)] = *q;
      }
      if (ok) {
        CycNum s(coords);
        if (sq.eval(s).is_zero() && std::find(found.begin(), found.end(), s) == found.end())
          found.push_back(s);
      }
      // Next index tuple.
      std::size_t g = 0;
      while (g < 4 && ++idx[g] == d) idx[g++] = 0;
      if (g == 4 || found.size() == static_cast<std::size_t>(sq.degree())) break;
    }
  }
  for (const auto& s : found) {
    const Poly lin(std::vector<CycNum>{-s, CycNum(1)});
    out.push_back({s, p.valuation_by(lin)});
  }
  return out;
}

}  // namespace kni::exact
