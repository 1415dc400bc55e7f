#include "kni/mono/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <numeric>

#include "kni/exact/roots.hpp"
#include "kni/numeric/dopri.hpp"

namespace kni::mono {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
const cd kI(0, 1);

double segment_distance(cd a, cd b, cd p) {
  const cd ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(a + t * ab - p);
}

double clearance_of(std::size_t k, const std::vector<cd>& s, cd base) {
  double m = std::abs(s[k] - base);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != k) m = std::min(m, std::abs(s[k] - s[j]));
  return 0.3 * m;
}

std::vector<cd> pole_set(const std::vector<std::vector<exact::RatFn>>& a) {
  std::vector<cd> out;
  for (const auto& row : a)
    for (const auto& f : row)
      for (const cd& r : exact::numeric_roots(f.den()))
        if (std::none_of(out.begin(), out.end(), [&](cd q) { return std::abs(q - r) < 1e-9; })) out.push_back(r);
  return out;
}

}  // namespace

LinearSystem LinearSystem::companion(const ops::DiffOp& l) {
  const ops::DiffOp m = l.monic();
  LinearSystem s;
  s.n_ = m.order();
  if (s.n_ < 1) throw Error("companion system of an operator of order < 1");
  const exact::RatFn scale =
      m.chart().kind == exact::ChartKind::HalfInvW ? exact::RatFn(exact::Poly::monomial(CycNum(2), 1)) : exact::RatFn(1);
  s.a_.assign(static_cast<std::size_t>(s.n_), std::vector<exact::RatFn>(static_cast<std::size_t>(s.n_)));
  for (int r = 0; r + 1 < s.n_; ++r) s.a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + 1)] = scale;
  for (int c = 0; c < s.n_; ++c) s.a_.back()[static_cast<std::size_t>(c)] = -scale * m.coeff(c);
  s.poles_ = pole_set(s.a_);
  return s;
}

LinearSystem LinearSystem::from_varsystem(const var::VarSystem& v) {
  LinearSystem s;
  s.n_ = v.n();
  const exact::RatFn scale =
      v.chart().kind == exact::ChartKind::HalfInvW ? exact::RatFn(exact::Poly::monomial(CycNum(2), 1)) : exact::RatFn(1);
  s.a_.assign(static_cast<std::size_t>(s.n_), std::vector<exact::RatFn>(static_cast<std::size_t>(s.n_)));
  for (int r = 0; r < s.n_; ++r)
    for (int c = 0; c < s.n_; ++c) s.a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = scale * v.at(r, c);
  s.poles_ = pole_set(s.a_);
  return s;
}

CMat LinearSystem::eval(cd z) const {
  for (const cd& p : poles_)
    if (std::abs(z - p) < 1e-12 * std::max(1.0, std::abs(p)))
      throw SingularEvaluation("linear system evaluated at a singular point");
  CMat a = CMat::Zero(n_, n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      const auto& f = a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!f.is_zero()) a(r, c) = f.eval(z);
    }
  return a;
}

Loop square_loop(cd base, cd s, double h, std::string tag) {
  const cd d = (base - s) / std::abs(base - s);
  Loop l{base, {base}, std::move(tag)};
  for (cd corner : {cd(1, 0), cd(1, 1), cd(-1, 1), cd(-1, -1), cd(1, -1), cd(1, 0)}) l.vertices.push_back(s + h * d * corner);
  l.vertices.push_back(base);
  return l;
}

Loop concat(const Loop& a, const Loop& b, std::string tag) {
  if (a.base != b.base) throw Error("concat: loops have different base points");
  Loop l{a.base, a.vertices, std::move(tag)};
  l.vertices.insert(l.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return l;
}

Loop reversed(const Loop& l, std::string tag) {
  Loop r{l.base, l.vertices, std::move(tag)};
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

std::string check_clearance(const Loop& l, const std::vector<cd>& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double c = clearance_of(k, s, l.base);
    for (std::size_t v = 0; v + 1 < l.vertices.size(); ++v) {
      const double d = segment_distance(l.vertices[v], l.vertices[v + 1], s[k]);
      if (d < c) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "loop %s: segment %zu passes %.3g from singularity (%.6g, %.6g), clearance %.3g",
                      l.tag.c_str(), v, d, s[k].real(), s[k].imag(), c);
        return buf;
      }
    }
  }
  return {};
}

LoopSet loop_set(const std::vector<cd>& s, cd base) {
  if (s.empty()) throw Error("loop_set: no singularities");
  for (std::size_t k = 0; k < s.size(); ++k)
    if (std::abs(s[k] - base) < 1e-9) throw Error("loop_set: base point is singular");
  LoopSet out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double h = clearance_of(k, s, base) / 0.3 * 0.4;
    char tag[64];
    auto snap = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
    std::snprintf(tag, sizeof tag, "around (%.6g, %.6g)", snap(s[k].real()), snap(s[k].imag()));
    Loop l = square_loop(base, s[k], h, tag);
    if (const auto why = check_clearance(l, s); !why.empty()) throw Error("loop_set: " + why);
    out.generators.push_back(std::move(l));
  }
  double far = 0;
  for (const cd& p : s) far = std::max(far, std::abs(p - base));
  const double r = 1.5 * far + 0.5;
  // Exit ray: first of eight directions that keeps clearance.
  for (int k = 0; k < 8; ++k) {
    const cd dir = std::polar(1.0, std::numbers::pi * k / 4);
    Loop big{base, {base}, "infinity"};
    for (cd corner : {cd(1, 0), cd(1, 1), cd(-1, 1), cd(-1, -1), cd(1, -1), cd(1, 0)})
      big.vertices.push_back(base + r * dir * corner);
    big.vertices.push_back(base);
    if (!check_clearance(big, s).empty()) continue;
    out.infinity = reversed(big, "infinity");
    const double phi0 = std::arg(dir);
    std::vector<double> ang;
    for (const cd& p : s) {
      double a = std::arg(p - base) - phi0;
      while (a < 0) a += kTwoPi;
      while (a >= kTwoPi) a -= kTwoPi;
      ang.push_back(a);
    }
    out.sweep_order.resize(s.size());
    std::iota(out.sweep_order.begin(), out.sweep_order.end(), 0);
    std::stable_sort(out.sweep_order.begin(), out.sweep_order.end(),
                     [&](int a, int b) { return ang[static_cast<std::size_t>(a)] < ang[static_cast<std::size_t>(b)]; });
    Loop comp = out.generators[static_cast<std::size_t>(out.sweep_order[0])];
    for (std::size_t j = 1; j < s.size(); ++j)
      comp = concat(comp, out.generators[static_cast<std::size_t>(out.sweep_order[j])], "");
    out.composite = concat(comp, out.infinity, "composite");
    return out;
  }
  throw Error("loop_set: no exit ray for the loop at infinity keeps clearance");
}

namespace {

CMat transport(const LinearSystem& sys, const Loop& loop, double rtol, double h_max, long* steps, double* peak) {
  CMat y = CMat::Identity(sys.n(), sys.n());
  numeric::DopriOptions opt;
  opt.rtol = rtol;
  opt.atol = rtol;
  opt.h_max = h_max;
  opt.h_initial = h_max / 4;
  numeric::DopriStats st;
  double top = 1;
  auto watch = [&top](double, const CMat& m) {
    top = std::max(top, m.norm());
    return true;
  };
  for (std::size_t v = 0; v + 1 < loop.vertices.size(); ++v) {
    const cd z0 = loop.vertices[v], dz = loop.vertices[v + 1] - z0;
    if (std::abs(dz) == 0) continue;
    auto f = [&](double s, const CMat& m) -> CMat { return dz * (sys.eval(z0 + s * dz) * m); };
    y = numeric::dopri_integrate(f, 0.0, y, 1.0, opt, &st, watch);
  }
  if (steps) *steps = st.accepted + st.rejected;
  if (peak) *peak = top;
  return y;
}

}  // namespace

MonodromyMatrix continue_along(const LinearSystem& sys, const Loop& loop, double tol) {
  if (!(tol > 0)) throw Error("continue_along: tolerance must be positive");
  if (loop.vertices.size() < 2 || loop.vertices.front() != loop.base || loop.vertices.back() != loop.base)
    throw Error("continue_along: loop " + loop.tag + " is not closed at its base point");
  MonodromyMatrix out;
  out.loop = loop.tag;
  const double rtol = std::min(1e-10, tol * 1e-3);
  const double h_max = 1.0 / 16;
  long s1 = 0, s2 = 0;
  out.m = transport(sys, loop, rtol, h_max, &s1, &out.scale);
  const CMat check = transport(sys, loop, rtol / 32, h_max / 2, &s2, nullptr);
  out.steps = s1 + s2;
  out.residual = (out.m - check).norm() / out.scale;
  out.accepted = out.residual <= tol;
  if (!out.accepted) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "residual %.3e above tolerance %.3e after %ld steps", out.residual, tol, out.steps);
    out.diagnostics = buf;
  }
  return out;
}

std::vector<MonodromyMatrix> continue_all(const LinearSystem& sys, const std::vector<Loop>& loops, double tol) {
  std::vector<std::future<MonodromyMatrix>> jobs;
  for (const auto& l : loops) jobs.push_back(std::async(std::launch::async, [&sys, &l, tol] { return continue_along(sys, l, tol); }));
  std::vector<MonodromyMatrix> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

GroupTests group_tests(const std::vector<CMat>& mats, double eig_tol) {
  GroupTests g;
  for (std::size_t a = 0; a < mats.size(); ++a)
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      const CMat c = mats[a] * mats[b] - mats[b] * mats[a];
      const double d = c.norm() / (mats[a].norm() * mats[b].norm());
      g.pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
      g.defects.push_back(d);
      g.max_defect = std::max(g.max_defect, d);
    }
  g.abelian = std::all_of(g.defects.begin(), g.defects.end(), [](double d) { return d < 1e-6; });
  if (mats.empty()) return g;
  Eigen::ComplexEigenSolver<CMat> es(mats[0]);
  for (int k = 0; k < es.eigenvectors().cols() && !g.common_eigenvector; ++k) {
    const Eigen::VectorXcd v = es.eigenvectors().col(k).normalized();
    bool shared = true;
    for (std::size_t j = 1; j < mats.size() && shared; ++j) {
      const Eigen::VectorXcd w = mats[j] * v;
      const cd lambda = v.dot(w);
      shared = (w - lambda * v).norm() <= eig_tol * mats[j].norm();
    }
    g.common_eigenvector = shared;
  }
  return g;
}

std::array<std::array<cd, 2>, 3> hg_local_eigenvalues(const classify::HGParams& p) {
  auto e = [](const CycNum& x) { return std::exp(kTwoPi * kI * x.to_complex()); };
  return {{{cd(1), e(-p.c)}, {cd(1), e(p.c - p.a - p.b)}, {e(p.a), e(p.b)}}};
}

std::vector<cd> exponent_eigenvalues(const std::vector<ops::Exponent>& exps) {
  std::vector<cd> out;
  for (const auto& e : exps)
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(std::exp(kTwoPi * kI * e.numeric));
  return out;
}

double eigenvalue_mismatch(std::vector<cd> computed, std::vector<cd> expected) {
  if (computed.size() != expected.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = computed.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    // A Jordan block splits its eigenvalue by ~sqrt(eps); the mean over the
    // copies of a repeated expected value is the well-conditioned quantity.
    double worst = 0;
    bool loose = false;
    for (std::size_t k = 0; k < n; ++k) {
      const cd want = expected[static_cast<std::size_t>(perm[k])];
      const double scale = std::max(std::abs(want), 1e-300);
      if (std::abs(computed[k] - want) > 1e-3 * scale) loose = true;
      cd mean = 0;
      int count = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(expected[static_cast<std::size_t>(perm[j])] - want) <= 1e-9 * scale) {
          mean += computed[j];
          ++count;
        }
      worst = std::max(worst, std::abs(mean / double(count) - want) / scale);
    }
    if (!loose) best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<cd> eigenvalues(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

std::string format_matrix(const CMat& m) {
  std::string s;
  char buf[96];
  for (int r = 0; r < m.rows(); ++r) {
    if (r) s += " ; ";
    for (int c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%s%.17g:%.17g", c ? " " : "", m(r, c).real(), m(r, c).imag());
      s += buf;
    }
  }
  return s;
}

}  // namespace kni::mono
