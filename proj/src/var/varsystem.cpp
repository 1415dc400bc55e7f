#include "kni/var/varsystem.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kni/exact/linsolve.hpp"
#include "kni/mech/hamiltonian.hpp"

namespace kni::var {

namespace {

int index_of(const std::vector<std::string>& names, const std::string& n) {
  const auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw Error("unknown coordinate '" + n + "'");
  return static_cast<int>(it - names.begin());
}

// Second partials of the maximized Hamiltonian in the canonical ordering.
const std::vector<sym::Expr>& hessian_exprs() {
  static const std::vector<sym::Expr> h = [] {
    const sym::Expr ham = mech::maximized_hamiltonian();
    std::vector<sym::Expr> out(64);
    for (int i = 0; i < 8; ++i) {
      const sym::Expr di = sym::differentiate(ham, static_cast<sym::Var>(i));
      for (int j = i; j < 8; ++j) {
        out[static_cast<std::size_t>(i * 8 + j)] = sym::differentiate(di, static_cast<sym::Var>(j));
        out[static_cast<std::size_t>(j * 8 + i)] = out[static_cast<std::size_t>(i * 8 + j)];
      }
    }
    return out;
  }();
  return h;
}

}  // namespace

VarSystem::VarSystem(std::vector<std::string> ordering, Chart chart)
    : ordering_(std::move(ordering)), chart_(std::move(chart)), a_(ordering_.size() * ordering_.size()) {}

RatFn VarSystem::trace() const {
  RatFn t;
  for (int i = 0; i < n(); ++i) t += at(i, i);
  return t;
}

VarSystem VarSystem::scaled(const RatFn& f) const {
  VarSystem r = *this;
  for (auto& e : r.a_) e *= f;
  return r;
}

VarSystem VarSystem::block(int r0, int c0, int rows, int cols) const {
  if (rows != cols) throw Error("VarSystem::block: only square blocks are supported");
  VarSystem b(std::vector<std::string>(ordering_.begin() + r0, ordering_.begin() + r0 + rows), chart_);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

bool VarSystem::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const RatFn& f) { return f.is_zero(); });
}

bool VarSystem::poles_within(const exact::Poly& allowed) const {
  for (const auto& e : a_) {
    if (e.den().degree() < 1) continue;
    if (!allowed.divmod(exact::squarefree_part(e.den())).second.is_zero()) return false;
  }
  return true;
}

VarSystem VarSystem::reordered(const std::vector<std::string>& order) const {
  if (static_cast<int>(order.size()) != n()) throw Error("VarSystem::reordered: size mismatch");
  std::vector<int> idx;
  for (const auto& name : order) idx.push_back(index_of(ordering_, name));
  VarSystem r(order, chart_);
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) r.at(i, j) = at(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return r;
}

std::string VarSystem::serialize() const {
  std::ostringstream os;
  os << "varsystem 1\n";
  os << "chart " << chart_.tag() << "\n";
  os << "n " << n() << "\n";
  os << "ordering";
  for (const auto& o : ordering_) os << ' ' << o;
  os << "\n";
  for (const auto& e : a_) os << e.str() << "\n";
  return os.str();
}

VarSystem VarSystem::parse(std::string_view text) {
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
  auto expect = [&](std::size_t k, const std::string& key) -> std::string {
    if (k >= lines.size()) throw ParseError("varsystem: missing '" + key + "' line", text.size());
    const auto& [off, line] = lines[k];
    if (line.rfind(key + " ", 0) != 0) throw ParseError("varsystem: expected '" + key + "'", off);
    return line.substr(key.size() + 1);
  };
  if (expect(0, "varsystem") != "1") throw ParseError("varsystem: unsupported version", lines[0].first);
  const Chart chart = Chart::from_tag(expect(1, "chart"));
  int n = 0;
  try {
    n = std::stoi(expect(2, "n"));
  } catch (const std::logic_error&) {
    throw ParseError("varsystem: bad dimension", lines[2].first);
  }
  std::istringstream names(expect(3, "ordering"));
  std::vector<std::string> ordering;
  for (std::string s; names >> s;) ordering.push_back(s);
  if (n <= 0 || static_cast<int>(ordering.size()) != n) throw ParseError("varsystem: ordering does not match n", lines[3].first);
  if (lines.size() != 4 + static_cast<std::size_t>(n * n)) throw ParseError("varsystem: expected n*n entries", text.size());
  VarSystem sys(ordering, chart);
  for (int k = 0; k < n * n; ++k) {
    const auto& [off, line] = lines[4 + static_cast<std::size_t>(k)];
    try {
      sys.a_[static_cast<std::size_t>(k)] = RatFn::parse(line);
    } catch (const ParseError& e) {
      throw ParseError(std::string("varsystem entry: ") + e.what(), off + e.position());
    }
  }
  return sys;
}

VarSystem variational_matrix(const mech::CollisionBranch& branch, TimeScale scale) {
  const auto comp = branch.components();
  sym::Assignment<RatFn> at;
  for (int k = 0; k < 8; ++k) at[static_cast<std::size_t>(k)] = RatFn(0);
  at[static_cast<std::size_t>(sym::Var::x1)] = comp[0];
  at[static_cast<std::size_t>(sym::Var::x3)] = comp[1];
  at[static_cast<std::size_t>(sym::Var::p1)] = comp[2];
  at[static_cast<std::size_t>(sym::Var::p3)] = comp[3];
  at[static_cast<std::size_t>(sym::Var::r1)] = comp[0];
  at[static_cast<std::size_t>(sym::Var::r2)] = -comp[3];

  const auto& hess = hessian_exprs();
  std::vector<RatFn> h(64);
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j) {
      h[static_cast<std::size_t>(i * 8 + j)] = sym::evaluate<RatFn>(hess[static_cast<std::size_t>(i * 8 + j)], at);
      h[static_cast<std::size_t>(j * 8 + i)] = h[static_cast<std::size_t>(i * 8 + j)];
    }
  VarSystem a(kCanonicalOrder, Chart::w());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) {
      a.at(i, j) = h[static_cast<std::size_t>((i + 4) * 8 + j)];
      a.at(i + 4, j) = -h[static_cast<std::size_t>(i * 8 + j)];
    }
  if (scale == TimeScale::x1) return a.scaled(comp[1].inverse());
  return a;
}

bool is_infinitesimally_symplectic(const VarSystem& a) {
  if (a.n() != 8) throw Error("is_infinitesimally_symplectic: expects an 8x8 system");
  const VarSystem c = a.reordered(kCanonicalOrder);
  // J = [[0, I], [-I, 0]]; (A^T J)_{ij} = sum_k A_{ki} J_{kj}, (J A)_{ij} = sum_k J_{ik} A_{kj}.
  auto jv = [](int i, int j) { return (j == i + 4) ? 1 : (i == j + 4 ? -1 : 0); };
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      RatFn s;
      for (int k = 0; k < 8; ++k) {
        if (int v = jv(k, j)) s += RatFn(v) * c.at(k, i);
        if (int v = jv(i, k)) s += RatFn(v) * c.at(k, j);
      }
      if (!s.is_zero()) return false;
    }
  return true;
}

VarSystem extract_normal_block(const VarSystem& a) {
  const VarSystem r = a.reordered(kLineFirstOrder);
  if (!r.block(4, 0, 4, 4).is_zero())
    throw InvarianceViolation("lower-left block is nonzero: the line is not invariant along this solution");
  return r.block(4, 4, 4, 4);
}

VarSystem printed_normal_block(const RatFn& p3) {
  const RatFn x1 = RatFn::var() * RatFn::var();
  const RatFn s2(CycNum::sqrt2());
  VarSystem a({"X1", "X2", "X3", "X4"}, Chart::w());
  a.at(0, 3) = (s2 * p3).inverse();
  a.at(1, 0) = -(s2 * p3 * p3).inverse();
  a.at(1, 2) = -(s2 * x1.pow(3) * p3).inverse();
  a.at(2, 1) = (s2 * p3).inverse();
  a.at(3, 0) = -(s2 * x1.pow(3) * p3).inverse();
  a.at(3, 2) = RatFn(3) / (s2 * x1.pow(4));
  return a;
}

VarSystem printed_normal_block_fixture() {
  const RatFn w = RatFn::var();
  return printed_normal_block((w * w - RatFn(CycNum::i())) / w);
}

std::string PermutationMatch::describe(const std::vector<std::string>& derived_names) const {
  if (!found) return "no signed permutation matches (best candidate differs in " + std::to_string(mismatched_entries) + " entries)";
  std::string s = "(";
  for (int j = 0; j < 4; ++j) {
    if (j) s += ", ";
    s += (sign[static_cast<std::size_t>(j)] < 0 ? "-" : "") + derived_names[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
  }
  return s + ")";
}

VarSystem apply_signed_permutation(const VarSystem& derived, const std::array<int, 4>& perm,
                                   const std::array<int, 4>& sign, std::vector<std::string> names) {
  VarSystem r(std::move(names), derived.chart());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const RatFn& e = derived.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      r.at(i, j) = sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(j)] < 0 ? -e : e;
    }
  return r;
}

PermutationMatch match_up_to_signed_permutation(const VarSystem& derived, const VarSystem& reference) {
  if (derived.n() != 4 || reference.n() != 4) throw Error("signed permutation match expects 4x4 systems");
  if (!(derived.chart() == reference.chart())) throw ChartMismatch("signed permutation match: charts differ");
  PermutationMatch best;
  best.mismatched_entries = 17;
  std::array<int, 4> perm = {0, 1, 2, 3};
  int checked = 0;
  do {
    for (int mask = 0; mask < 16; ++mask) {
      std::array<int, 4> sign;
      for (int k = 0; k < 4; ++k) sign[static_cast<std::size_t>(k)] = (mask >> k) & 1 ? -1 : 1;
      ++checked;
      int bad = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const RatFn& e = derived.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
          const bool flip = sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(j)] < 0;
          if ((flip ? -e : e) != reference.at(i, j)) ++bad;
        }
      if (bad < best.mismatched_entries && !best.found) {
        best.mismatched_entries = bad;
        best.perm = perm;
        best.sign = sign;
        best.found = bad == 0;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.candidates_checked = checked;
  return best;
}

std::array<RatFn, 4> display_basis(const RatFn& p3) {
  const RatFn x1 = RatFn::var() * RatFn::var();
  const RatFn s2(CycNum::sqrt2());
  return {(s2 * p3).inverse(), (s2 * p3 * p3).inverse(), (s2 * x1.pow(3) * p3).inverse(), (s2 * x1.pow(4)).inverse()};
}

SpanCoefficients display_span(const VarSystem& a, const RatFn& p3) {
  const auto basis = display_basis(p3);
  const std::array<long, 4> pts = {2, 3, 5, 7};
  std::vector<std::vector<CycNum>> m(4, std::vector<CycNum>(4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) m[r][k] = basis[k].eval(CycNum(pts[r]));
  SpanCoefficients out;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      const RatFn& e = a.at(i, j);
      std::vector<CycNum> rhs;
      for (long p : pts) rhs.push_back(e.eval(CycNum(p)));
      const auto c = exact::solve_linear(m, rhs);
      if (!c) {
        out.emplace_back(std::nullopt);
        continue;
      }
      RatFn s;
      for (std::size_t k = 0; k < 4; ++k) s += RatFn((*c)[k]) * basis[k];
      if (s == e) out.emplace_back(std::array<CycNum, 4>{(*c)[0], (*c)[1], (*c)[2], (*c)[3]});
      else out.emplace_back(std::nullopt);
    }
  return out;
}

}  // namespace kni::var
