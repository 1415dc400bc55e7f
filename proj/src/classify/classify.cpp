#include "kni/classify/classify.hpp"

#include <algorithm>
#include <sstream>

#include "kni/data.hpp"

namespace kni::classify {

using exact::Integer;

namespace {

std::string triple(const std::array<CycNum, 3>& d) {
  return "(" + d[0].pretty() + ", " + d[1].pretty() + ", " + d[2].pretty() + ")";
}

bool is_real(const CycNum& v) { return v.conj() == v; }

// Whether the row matches the differences after a permutation, sign changes
// and integer shifts of even total.
bool row_matches(const SchwarzRow& row, const std::array<CycNum, 3>& d) {
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      bool ok = true, wild = false;
      Rational shift_sum = 0;
      for (int k = 0; k < 3 && ok; ++k) {
        const auto& r = row.diffs[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        if (!r) {
          wild = true;
          continue;
        }
        const CycNum v = (signs >> k & 1) ? -d[static_cast<std::size_t>(k)] : d[static_cast<std::size_t>(k)];
        const CycNum s = v - CycNum(*r);
        if (!s.is_integer()) ok = false;
        else shift_sum += s.to_rational();
      }
      if (!ok) continue;
      if (wild) return true;
      const Integer n = shift_sum.get_num();
      if (mpz_even_p(n.get_mpz_t())) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string row_text(const SchwarzRow& r) {
  std::string s;
  for (const auto& v : r.diffs) s += (v ? v->get_str() : std::string("*")) + " ";
  return s + "(" + r.group + ")";
}

}  // namespace

std::string HGParams::pretty() const { return "(" + a.pretty() + ", " + b.pretty() + ", " + c.pretty() + ")"; }

bool FuchsReport::fuchsian() const {
  return unlocated == 0 && std::all_of(points.begin(), points.end(), [](const auto& p) { return p.regular; });
}

FuchsReport fuchs_test(const DiffOp& l) {
  FuchsReport out;
  const int n = l.order();
  auto regular_at_zero = [n](const DiffOp& m) {
    for (int k = 0; k < n; ++k) {
      const auto& a = m.coeffs()[static_cast<std::size_t>(k)];
      if (!a.is_zero() && a.valuation() < k - n) return false;
    }
    return true;
  };
  auto report = [&](const Point& p) {
    SingularityReport r;
    r.point = p;
    r.regular = regular_at_zero(ops::localize(l, p).monic());
    if (r.regular) r.exponents = ops::indicial_data(l, p).exponents;
    out.points.push_back(std::move(r));
  };
  for (const auto& s : ops::finite_singularities(l, &out.unlocated)) report(Point::at(s));
  report(Point::infinity());
  return out;
}

std::array<CycNum, 3> exponent_differences(const HGParams& p) {
  return {CycNum(1) - p.c, p.c - p.a - p.b, p.a - p.b};
}

HGParams params_from_differences(const std::array<CycNum, 3>& d) {
  const CycNum half(Rational(1, 2));
  const CycNum c = CycNum(1) - d[0];
  const CycNum s = c - d[1];
  return {(s + d[2]) * half, (s - d[2]) * half, c};
}

std::string to_string(GaloisTag t) {
  switch (t) {
    case GaloisTag::Reducible: return "reducible";
    case GaloisTag::ImprimitiveDihedral: return "imprimitive-dihedral";
    case GaloisTag::FinitePrimitive: return "finite-primitive";
    case GaloisTag::SL2: return "SL2";
  }
  return "?";
}

GaloisTag galois_tag_from_string(std::string_view s) {
  for (auto t : {GaloisTag::Reducible, GaloisTag::ImprimitiveDihedral, GaloisTag::FinitePrimitive, GaloisTag::SL2})
    if (to_string(t) == s) return t;
  throw ParseError("unknown Galois class '" + std::string(s) + "'", 0);
}

std::vector<SchwarzRow> parse_schwarz_table(std::string_view text) {
  std::vector<SchwarzRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  bool header = false;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    if (line.rfind("# schwarz ", 0) == 0) {
      if (line != "# schwarz 1") throw ParseError("schwarz table: unsupported version", at);
      header = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!header) throw ParseError("schwarz table: missing version header", at);
    std::istringstream ls(line);
    SchwarzRow r;
    for (auto& v : r.diffs) {
      std::string tok;
      if (!(ls >> tok)) throw ParseError("schwarz table: short row", at);
      if (tok == "*") continue;
      try {
        Rational q(tok);
        q.canonicalize();
        v = q;
      } catch (const std::invalid_argument&) {
        throw ParseError("schwarz table: bad number '" + tok + "'", at);
      }
    }
    if (!(ls >> r.group)) throw ParseError("schwarz table: missing group", at);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError("schwarz table: no rows", 0);
  return rows;
}

const std::vector<SchwarzRow>& schwarz_table() {
  static const std::vector<SchwarzRow> t = parse_schwarz_table(data::fixture("schwarz_table.txt"));
  return t;
}

GaloisClass kimura_classify(const HGParams& p, const std::vector<SchwarzRow>& table) {
  const std::array<std::pair<const char*, CycNum>, 4> ints = {
      {{"a", p.a}, {"b", p.b}, {"c - a", p.c - p.a}, {"c - b", p.c - p.b}}};
  for (const auto& [name, v] : ints)
    if (v.is_integer()) return {GaloisTag::Reducible, std::string(name) + " = " + v.pretty() + " is an integer"};

  const auto d = exponent_differences(p);
  for (const auto& row : table) {
    const bool dihedral = !row.diffs[2];
    if (!dihedral && !std::all_of(d.begin(), d.end(), [](const CycNum& v) { return v.is_rational(); })) continue;
    if (!row_matches(row, d)) continue;
    const std::string w = "exponent differences " + triple(d) + " match Schwarz row " + row_text(row);
    return {dihedral ? GaloisTag::ImprimitiveDihedral : GaloisTag::FinitePrimitive, w};
  }
  if (!std::all_of(d.begin(), d.end(), is_real)) return {GaloisTag::SL2, "non-real exponent differences " + triple(d)};
  if (!std::all_of(d.begin(), d.end(), [](const CycNum& v) { return v.is_rational(); }))
    return {GaloisTag::SL2, "irrational exponent differences " + triple(d)};
  return {GaloisTag::SL2, "rational exponent differences " + triple(d) + " outside the Schwarz list"};
}

std::vector<HGParams> hypergeometric_candidates(const DiffOp& l) {
  auto exact_exps = [&](const Point& pt) {
    std::vector<CycNum> v;
    for (const auto& e : ops::indicial_data(l, pt).exponents)
      if (e.exact)
        for (int k = 0; k < e.multiplicity; ++k) v.push_back(e.value);
    return v;
  };
  const auto e0 = exact_exps(Point::at(CycNum(0)));
  const auto e1 = exact_exps(Point::at(CycNum(1)));
  const auto einf = exact_exps(Point::infinity());
  // Each local set must contain 0 plus the partner exponent.
  auto partners = [](const std::vector<CycNum>& e) {
    std::vector<CycNum> out;
    const auto z = std::find(e.begin(), e.end(), CycNum(0));
    if (z == e.end()) return out;
    for (auto it = e.begin(); it != e.end(); ++it)
      if (it != z && std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    return out;
  };
  std::vector<HGParams> found;
  for (const auto& r0 : partners(e0)) {
    const CycNum c = CycNum(1) - r0;
    for (const auto& r1 : partners(e1)) {
      const CycNum sum = c - r1;
      for (std::size_t i = 0; i < einf.size(); ++i)
        for (std::size_t j = 0; j < einf.size(); ++j) {
          if (i == j || einf[i] + einf[j] != sum) continue;
          const HGParams h{einf[i], einf[j], c};
          if (std::find(found.begin(), found.end(), h) == found.end()) found.push_back(h);
        }
    }
  }
  return found;
}

Verdict verdict_chain(const GaloisClass& factor, const std::optional<MonodromyEvidence>& evidence) {
  Verdict v;
  const bool sl2 = factor.tag == GaloisTag::SL2;
  v.chain.push_back("hypergeometric factor: Galois group class " + to_string(factor.tag) + " [" + factor.witness +
                    "] (Kimura 1969, Schwarz list)");
  if (!evidence) {
    v.flags.push_back("numeric corroboration absent");
  } else {
    const bool nonabelian = evidence->max_commutator_defect > kNonAbelianDefect;
    std::ostringstream s;
    s.precision(6);
    s << "monodromy: max commutator defect " << evidence->max_commutator_defect
      << (evidence->abelian ? ", abelian" : ", non-abelian")
      << (evidence->common_eigenvector ? ", common eigenvector" : ", no common eigenvector");
    v.chain.push_back(s.str());
    if (sl2 && evidence->abelian)
      v.contradictions.push_back("classification SL2 but loop matrices commute");
    if (factor.tag == GaloisTag::Reducible && nonabelian)
      v.contradictions.push_back("classification reducible but loop matrices do not commute");
    if (sl2 && !evidence->abelian && !nonabelian)
      v.flags.push_back("commutator defect below the non-abelian threshold");
  }
  if (sl2) {
    v.chain.push_back("SL2 group of the factor => the monodromy of the scalar equation over C(x1) is Zariski dense in a "
                      "group containing SL2 (Schlesinger density theorem for Fuchsian equations)");
    v.chain.push_back("adjoining sqrt(x1) is an extension of degree 2, so the identity component still contains SL2");
    v.chain.push_back("=> the Galois group of the normal variational equation is not virtually abelian");
    v.chain.push_back("=> Morales-Ramis theorem: the system is not meromorphically Liouville integrable");
  } else {
    v.chain.push_back("a " + to_string(factor.tag) + " group can have an abelian identity component; no obstruction");
  }
  if (v.contradiction()) {
    v.conclusion = "contradiction";
  } else {
    v.conclusion = std::string(sl2 ? kCriteriaSatisfied : kNoObstruction);
  }
  return v;
}

}  // namespace kni::classify
