#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kni/errors.hpp"
#include "kni/exact/ratfn.hpp"
#include "kni/mech/branch.hpp"

namespace kni::var {

using exact::Chart;
using exact::CycNum;
using exact::RatFn;

/// Linear system Y' = A Y with A over rational functions of one chart variable.
class VarSystem {
 public:
  VarSystem() = default;
  VarSystem(std::vector<std::string> ordering, Chart chart);

  int n() const { return static_cast<int>(ordering_.size()); }
  const std::vector<std::string>& ordering() const { return ordering_; }
  const Chart& chart() const { return chart_; }

  RatFn& at(int i, int j) { return a_[static_cast<std::size_t>(i * n() + j)]; }
  const RatFn& at(int i, int j) const { return a_[static_cast<std::size_t>(i * n() + j)]; }

  RatFn trace() const;
  VarSystem scaled(const RatFn& f) const;
  /// Sub-block rows [r0, r0 + rows), cols [c0, c0 + cols); ordering follows the rows.
  VarSystem block(int r0, int c0, int rows, int cols) const;
  bool is_zero() const;
  /// Poles of every entry lie in the zero set of `allowed` (a squarefree polynomial).
  bool poles_within(const exact::Poly& allowed) const;

  /// Conjugate by the coordinate permutation that lists coordinates in `order`.
  VarSystem reordered(const std::vector<std::string>& order) const;

  friend bool operator==(const VarSystem& a, const VarSystem& b) {
    return a.ordering_ == b.ordering_ && a.chart_ == b.chart_ && a.a_ == b.a_;
  }

  /// Text form: header line, chart, n, ordering, then n*n RatFn lines row-major.
  std::string serialize() const;
  static VarSystem parse(std::string_view text);

 private:
  std::vector<std::string> ordering_;
  Chart chart_;
  std::vector<RatFn> a_;
};

inline const std::vector<std::string> kCanonicalOrder = {"x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4"};
inline const std::vector<std::string> kLineFirstOrder = {"x1", "x3", "p1", "p3", "x2", "x4", "p2", "p4"};
inline const std::vector<std::string> kNormalOrder = {"x2", "x4", "p2", "p4"};

enum class TimeScale { t, x1 };

/// J D^2H along the branch in the canonical ordering; with TimeScale::x1
/// every entry is divided by x3.
VarSystem variational_matrix(const mech::CollisionBranch& branch, TimeScale scale);

/// A^T J + J A = 0 exactly (canonical ordering, n = 8).
bool is_infinitesimally_symplectic(const VarSystem& a);

/// Reorders to (x1, x3, p1, p3, x2, x4, p2, p4) and returns the lower-right
/// 4x4 block. Throws InvarianceViolation if the lower-left block is nonzero.
VarSystem extract_normal_block(const VarSystem& a);

class InvarianceViolation : public Error {
 public:
  using Error::Error;
};

/// The displayed normal block with p3 a given function of w
/// (rows and columns as displayed).
VarSystem printed_normal_block(const RatFn& p3);
/// The displayed block with p3 = (x1 - i)/sqrt(x1), i.e. (w^2 - i)/w.
VarSystem printed_normal_block_fixture();

/// Signed permutation search: reference = Q derived Q^-1 where reference
/// coordinate j is sign[j] * derived coordinate perm[j].
struct PermutationMatch {
  bool found = false;
  std::array<int, 4> perm{};
  std::array<int, 4> sign{};
  int mismatched_entries = 0;  // for the best candidate when not found
  int candidates_checked = 0;
  std::string describe(const std::vector<std::string>& derived_names) const;
};
PermutationMatch match_up_to_signed_permutation(const VarSystem& derived, const VarSystem& reference);
VarSystem apply_signed_permutation(const VarSystem& derived, const std::array<int, 4>& perm,
                                   const std::array<int, 4>& sign, std::vector<std::string> names);

/// Coefficients c with entry = sum c_k basis_k (constant c_k), per entry;
/// nullopt for an entry outside the span.
using SpanCoefficients = std::vector<std::optional<std::array<CycNum, 4>>>;
/// Basis {1/(sqrt2 p3), 1/(sqrt2 p3^2), 1/(sqrt2 x1^3 p3), 1/(sqrt2 x1^4)}.
std::array<RatFn, 4> display_basis(const RatFn& p3);
SpanCoefficients display_span(const VarSystem& a, const RatFn& p3);

}  // namespace kni::var
