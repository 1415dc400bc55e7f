#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kni/ops/diffop.hpp"
#include "kni/ops/local.hpp"

namespace kni::classify {

using exact::CycNum;
using exact::Rational;
using ops::DiffOp;
using ops::Point;

/// Parameters of 2F1(a, b; c; u).
struct HGParams {
  CycNum a, b, c;
  std::string pretty() const;
  friend bool operator==(const HGParams& x, const HGParams& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

struct SingularityReport {
  Point point;
  bool regular = true;
  std::vector<ops::Exponent> exponents;
};

struct FuchsReport {
  std::vector<SingularityReport> points;  // finite singularities, then infinity
  int unlocated = 0;                      // singular points outside the field
  bool fuchsian() const;
};

/// Pole-order test at every finite singularity of the monic operator and at
/// infinity, with exponents attached at regular points.
FuchsReport fuchs_test(const DiffOp& l);

/// (1 - c, c - a - b, a - b).
std::array<CycNum, 3> exponent_differences(const HGParams& p);
/// Inverse of exponent_differences.
HGParams params_from_differences(const std::array<CycNum, 3>& d);

enum class GaloisTag { Reducible, ImprimitiveDihedral, FinitePrimitive, SL2 };
std::string to_string(GaloisTag t);
GaloisTag galois_tag_from_string(std::string_view s);

struct GaloisClass {
  GaloisTag tag = GaloisTag::SL2;
  std::string witness;
  /// SL2 is the only tag that rules out a virtually abelian group.
  bool virtually_abelian_possible() const { return tag != GaloisTag::SL2; }
};

struct SchwarzRow {
  std::array<std::optional<Rational>, 3> diffs;  // nullopt = arbitrary
  std::string group;
};

/// Rows of the Schwarz table in its text format ("# ..." comments, then
/// "l m n group" per row).
std::vector<SchwarzRow> parse_schwarz_table(std::string_view text);
/// The table shipped with the library.
const std::vector<SchwarzRow>& schwarz_table();

GaloisClass kimura_classify(const HGParams& p, const std::vector<SchwarzRow>& table = schwarz_table());

/// Parameter triples whose 2F1 equation has local exponents contained in
/// those of l at u = 0, 1, infinity: {0, 1 - c}, {0, c - a - b}, {a, b}.
std::vector<HGParams> hypergeometric_candidates(const DiffOp& l);

/// Numeric monodromy evidence as seen by the verdict.
struct MonodromyEvidence {
  double max_commutator_defect = 0;
  bool abelian = false;
  bool common_eigenvector = false;
};

struct Verdict {
  std::string conclusion;  // "non-integrability criteria satisfied" / "no obstruction found"
  std::vector<std::string> contradictions;
  std::vector<std::string> flags;
  std::vector<std::string> chain;
  bool contradiction() const { return !contradictions.empty(); }
};

inline constexpr std::string_view kCriteriaSatisfied = "non-integrability criteria satisfied";
inline constexpr std::string_view kNoObstruction = "no obstruction found";
/// Defect above which two loop matrices count as non-commuting evidence.
inline constexpr double kNonAbelianDefect = 0.1;

Verdict verdict_chain(const GaloisClass& factor, const std::optional<MonodromyEvidence>& evidence);

}  // namespace kni::classify
