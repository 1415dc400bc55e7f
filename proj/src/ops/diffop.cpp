#include "kni/ops/diffop.hpp"

#include <sstream>

namespace kni::ops {

namespace {

void require_same_chart(const DiffOp& a, const DiffOp& b, const char* where) {
  if (!(a.chart() == b.chart())) throw ChartMismatch(std::string(where) + ": operators live in different charts");
}

// D * L
DiffOp left_derivation(const DiffOp& l) {
  const int n = l.order();
  std::vector<RatFn> c(static_cast<std::size_t>(n) + 2);
  for (int j = 0; j <= n; ++j) {
    c[static_cast<std::size_t>(j)] += l.coeff(j).derive(l.chart());
    c[static_cast<std::size_t>(j) + 1] += l.coeff(j);
  }
  return DiffOp(l.chart(), std::move(c));
}

int weight(const RatFn& f) { return f.is_zero() ? 1 << 30 : f.num().degree() + f.den().degree(); }

// Solves sum_j c_j rows[j] = target; rows are linearly independent.
std::optional<std::vector<RatFn>> span_solve(const std::vector<std::vector<RatFn>>& rows,
                                             const std::vector<RatFn>& target) {
  const std::size_t m = rows.size(), n = target.size();
  // Augmented n x (m + 1) system, one equation per coordinate.
  std::vector<std::vector<RatFn>> a(n, std::vector<RatFn>(m + 1));
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t j = 0; j < m; ++j) a[e][j] = rows[j][e];
    a[e][m] = target[e];
  }
  std::vector<std::size_t> pivot_row(m);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t best = n;
    for (std::size_t i = r; i < n; ++i)
      if (!a[i][col].is_zero() && (best == n || weight(a[i][col]) < weight(a[best][col]))) best = i;
    if (best == n) return std::nullopt;  // dependent rows; not expected
    std::swap(a[best], a[r]);
    const RatFn inv = a[r][col].inverse();
    for (std::size_t k = col; k <= m; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      const RatFn f = a[i][col];
      for (std::size_t k = col; k <= m; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_row[col] = r++;
  }
  for (std::size_t i = r; i < n; ++i)
    if (!a[i][m].is_zero()) return std::nullopt;
  std::vector<RatFn> c(m);
  for (std::size_t col = 0; col < m; ++col) c[col] = a[pivot_row[col]][m];
  return c;
}

}  // namespace

DiffOp::DiffOp(Chart chart, std::vector<RatFn> coeffs) : chart_(std::move(chart)), a_(std::move(coeffs)) { trim(); }

void DiffOp::trim() {
  while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
}

RatFn DiffOp::coeff(int k) const {
  if (k < 0 || k > order()) return RatFn();
  return a_[static_cast<std::size_t>(k)];
}

DiffOp DiffOp::monic() const {
  if (is_zero()) throw DivisionByZero("DiffOp::monic of the zero operator");
  const RatFn inv = lc().inverse();
  std::vector<RatFn> c;
  for (const auto& x : a_) c.push_back(x * inv);
  return DiffOp(chart_, std::move(c));
}

RatFn DiffOp::apply(const RatFn& f) const {
  RatFn s, d = f;
  for (int k = 0; k <= order(); ++k) {
    if (k) d = d.derive(chart_);
    s += a_[static_cast<std::size_t>(k)] * d;
  }
  return s;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    chart_ = o.chart_;
  } else {
    require_same_chart(*this, o, "DiffOp addition");
  }
  if (a_.size() < o.a_.size()) a_.resize(o.a_.size());
  for (std::size_t k = 0; k < o.a_.size(); ++k) a_[k] += o.a_[k];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) { return *this += -o; }

DiffOp operator*(const RatFn& f, const DiffOp& l) {
  std::vector<RatFn> c;
  for (const auto& x : l.a_) c.push_back(f * x);
  return DiffOp(l.chart_, std::move(c));
}

DiffOp DiffOp::operator-() const { return RatFn(-1) * *this; }

bool DiffOp::is_even() const {
  for (const auto& c : a_)
    if (!c.is_even()) return false;
  return true;
}

std::string DiffOp::serialize() const {
  std::ostringstream os;
  os << "diffop 1\n";
  os << "chart " << chart_.tag() << "\n";
  os << "order " << order() << "\n";
  for (const auto& c : a_) os << c.str() << "\n";
  return os.str();
}

DiffOp DiffOp::parse(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') lines.emplace_back(pos, line);
    pos = end + 1;
  }
  auto field = [&](std::size_t k, const std::string& key) {
    if (k >= lines.size()) throw ParseError("diffop: missing '" + key + "' line", text.size());
    if (lines[k].second.rfind(key + " ", 0) != 0) throw ParseError("diffop: expected '" + key + "'", lines[k].first);
    return lines[k].second.substr(key.size() + 1);
  };
  if (field(0, "diffop") != "1") throw ParseError("diffop: unsupported version", lines[0].first);
  const Chart chart = Chart::from_tag(field(1, "chart"));
  int n = -2;
  try {
    n = std::stoi(field(2, "order"));
  } catch (const std::logic_error&) {
    throw ParseError("diffop: bad order", lines[2].first);
  }
  if (n < 0 || lines.size() != 3 + static_cast<std::size_t>(n) + 1)
    throw ParseError("diffop: coefficient count does not match order", lines.size() > 2 ? lines[2].first : 0);
  std::vector<RatFn> c;
  for (int k = 0; k <= n; ++k) {
    const auto& [off, line] = lines[3 + static_cast<std::size_t>(k)];
    try {
      c.push_back(RatFn::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(std::string("diffop coefficient: ") + e.what(), off + e.position());
    }
  }
  DiffOp op(chart, std::move(c));
  if (op.order() != n) throw ParseError("diffop: leading coefficient is zero", lines[2].first);
  return op;
}

std::string DiffOp::pretty() const {
  if (is_zero()) return "0";
  const std::string& var = chart_.var;
  std::string s;
  for (int k = order(); k >= 0; --k) {
    const RatFn& c = a_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + c.pretty(var) + "]";
    if (k == 1) s += " D";
    else if (k > 1) s += " D^" + std::to_string(k);
  }
  return s;
}

DiffOp op_mul(const DiffOp& l1, const DiffOp& l2) {
  if (l1.is_zero() || l2.is_zero()) return DiffOp(l1.is_zero() ? l2.chart() : l1.chart(), {});
  require_same_chart(l1, l2, "op_mul");
  DiffOp result(l1.chart(), {});
  DiffOp m = l2;
  for (int i = 0; i <= l1.order(); ++i) {
    if (i) m = left_derivation(m);
    const RatFn& a = l1.coeffs()[static_cast<std::size_t>(i)];
    if (!a.is_zero()) result += a * m;
  }
  return result;
}

Division right_divide(const DiffOp& l, const DiffOp& r) {
  if (r.is_zero()) throw DivisionByZero("right_divide by the zero operator");
  if (!l.is_zero()) require_same_chart(l, r, "right_divide");
  DiffOp q(r.chart(), {}), rem = l;
  const RatFn inv = r.lc().inverse();
  while (!rem.is_zero() && rem.order() >= r.order()) {
    const int shift = rem.order() - r.order();
    std::vector<RatFn> c(static_cast<std::size_t>(shift) + 1);
    c.back() = rem.lc() * inv;
    const DiffOp t(r.chart(), std::move(c));
    q += t;
    rem -= op_mul(t, r);
  }
  return {q, rem};
}

DiffOp twist(const DiffOp& l, const RatFn& r) {
  if (l.is_zero()) return l;
  const DiffOp d_plus_r(l.chart(), {r, RatFn(1)});
  DiffOp p = DiffOp::scalar(l.chart(), RatFn(1));
  DiffOp result(l.chart(), {});
  for (int k = 0; k <= l.order(); ++k) {
    if (k) p = op_mul(d_plus_r, p);
    result += l.coeffs()[static_cast<std::size_t>(k)] * p;
  }
  return result;
}

DiffOp affine_subst(const DiffOp& l, const CycNum& a, const CycNum& b, const std::string& var) {
  if (l.chart().kind != exact::ChartKind::Plain) throw ChartMismatch("affine_subst needs a plain chart");
  if (a.is_zero()) throw DivisionByZero("affine_subst with a = 0");
  const CycNum ainv = a.inverse();
  std::vector<RatFn> c;
  CycNum apow(1);
  for (int k = 0; k <= l.order(); ++k) {
    c.push_back(l.coeffs()[static_cast<std::size_t>(k)].compose_linear(ainv, -b * ainv) * RatFn(apow));
    apow *= a;
  }
  return DiffOp(Chart::plain(var), std::move(c));
}

DiffOp to_x1_chart(const DiffOp& l) {
  if (l.chart().kind != exact::ChartKind::HalfInvW) throw ChartMismatch("to_x1_chart expects a w-chart operator");
  std::vector<RatFn> c;
  for (const auto& x : l.coeffs()) {
    if (!x.is_even()) throw Error("to_x1_chart: coefficient is not even in w");
    c.push_back(x.halve_even());
  }
  return DiffOp(Chart::x1(), std::move(c));
}

DiffOp to_w_chart(const DiffOp& l) {
  if (l.chart().kind != exact::ChartKind::Plain) throw ChartMismatch("to_w_chart expects a plain-chart operator");
  std::vector<RatFn> c;
  for (const auto& x : l.coeffs()) c.push_back(x.even_embed());
  return DiffOp(Chart::w(), std::move(c));
}

CyclicResult cyclic_reduce(const var::VarSystem& sys, int k) {
  const int n = sys.n();
  if (k < 0 || k >= n) throw Error("cyclic_reduce: coordinate index out of range");
  std::vector<std::vector<RatFn>> forms;
  std::vector<RatFn> cur(static_cast<std::size_t>(n));
  cur[static_cast<std::size_t>(k)] = RatFn(1);
  forms.push_back(cur);
  for (int m = 1; m <= n; ++m) {
    std::vector<RatFn> next(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      RatFn s = cur[static_cast<std::size_t>(c)].derive(sys.chart());
      for (int r = 0; r < n; ++r) {
        const RatFn& lr = cur[static_cast<std::size_t>(r)];
        if (!lr.is_zero() && !sys.at(r, c).is_zero()) s += lr * sys.at(r, c);
      }
      next[static_cast<std::size_t>(c)] = s;
    }
    if (auto coef = span_solve(forms, next)) {
      std::vector<RatFn> a(static_cast<std::size_t>(m) + 1);
      for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j)] = -(*coef)[static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(m)] = RatFn(1);
      return {DiffOp(sys.chart(), std::move(a)), m < n};
    }
    forms.push_back(next);
    cur = std::move(next);
  }
  throw Error("cyclic_reduce: no dependency among n + 1 forms");
}

bool annihilates_hyperexponential(const DiffOp& l, const RatFn& r0) { return twist(l, r0).coeff(0).is_zero(); }

DiffOp reduce_order(const DiffOp& l, const RatFn& r0) {
  const DiffOp t = twist(l, r0);
  if (!t.coeff(0).is_zero())
    throw NotASolution("reduce_order: the given function is not a solution (residual " + t.coeff(0).pretty(l.chart().var) + ")",
                       DiffOp::scalar(l.chart(), t.coeff(0)));
  std::vector<RatFn> c(t.coeffs().begin() + 1, t.coeffs().end());
  return DiffOp(l.chart(), std::move(c)).monic();
}

DiffOp hypergeometric_operator(const CycNum& a, const CycNum& b, const CycNum& c, const std::string& var) {
  const Poly u = Poly::x();
  return DiffOp(Chart::plain(var), {RatFn(-(a * b)), RatFn(Poly(c) - u * (a + b + CycNum(1))), RatFn(u - u * u)});
}

}  // namespace kni::ops
