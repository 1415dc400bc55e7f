#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kni/mech/branch.hpp"
#include "kni/var/varsystem.hpp"

using namespace kni::var;
using kni::exact::Poly;
using kni::mech::CollisionBranch;

namespace {

const CollisionBranch& branch() {
  static const CollisionBranch b = kni::mech::solve_collision_ansatz().branches.at(1);
  return b;
}

int idx(const std::string& name) {
  for (std::size_t k = 0; k < kCanonicalOrder.size(); ++k)
    if (kCanonicalOrder[k] == name) return static_cast<int>(k);
  return -1;
}

}  // namespace

TEST_CASE("variational matrix entries by hand") {
  const VarSystem a = variational_matrix(branch(), TimeScale::t);
  const RatFn x1 = branch().x1(), p3 = branch().p3();
  // x2' = dH/dp2 = x4
  CHECK(a.at(idx("x2"), idx("x4")) == RatFn(1));
  CHECK(a.at(idx("x2"), idx("p4")).is_zero());
  // x4' = dH/dp4 picks up d2(r2)/dp4^2 = 1/r2 = -1/p3 on the line
  CHECK(a.at(idx("x4"), idx("p4")) == -p3.inverse());
  // p2' = -dH/dx2; d2(-p3 x1 r1^-3)/dx2^2 = 3 p3/x1^4 at x2 = 0
  CHECK(a.at(idx("p2"), idx("x2")) == RatFn(-3) * p3 / x1.pow(4));
  // x1' = x3 so the x1 row has a single 1 in the x3 column
  CHECK(a.at(idx("x1"), idx("x3")) == RatFn(1));
}

TEST_CASE("symplectic structure and invariant line") {
  for (auto scale : {TimeScale::t, TimeScale::x1}) {
    const VarSystem a = variational_matrix(branch(), scale);
    CHECK(a.n() == 8);
    CHECK(is_infinitesimally_symplectic(a));
    CHECK(a.trace().is_zero());
    const VarSystem re = a.reordered(kLineFirstOrder);
    CHECK(re.block(4, 0, 4, 4).is_zero());
    const VarSystem a3 = extract_normal_block(a);
    CHECK(a3.ordering() == kNormalOrder);
    CHECK(a3.trace().is_zero());
  }
}

TEST_CASE("rescaling to x1 time divides by x3") {
  const VarSystem at = variational_matrix(branch(), TimeScale::t);
  const VarSystem ax = variational_matrix(branch(), TimeScale::x1);
  CHECK(ax == at.scaled(branch().x3().inverse()));
  CHECK(ax.at(idx("x2"), idx("x4")) == branch().x3().inverse());
}

TEST_CASE("poles of the normal block") {
  const VarSystem a3 = extract_normal_block(variational_matrix(branch(), TimeScale::x1));
  // w (w^4 + 1)
  const Poly allowed(std::vector<CycNum>{CycNum(0), CycNum(1), CycNum(0), CycNum(0), CycNum(0), CycNum(1)});
  CHECK(a3.poles_within(allowed));
  CHECK_FALSE(a3.poles_within(Poly::x()));
}

TEST_CASE("normal block lies in the span of the display basis") {
  const VarSystem a3 = extract_normal_block(variational_matrix(branch(), TimeScale::x1));
  const auto span = display_span(a3, branch().p3());
  REQUIRE(span.size() == 16);
  for (const auto& c : span) CHECK(c.has_value());
  const auto basis = display_basis(branch().p3());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& c = span[static_cast<std::size_t>(i * 4 + j)];
      if (!c) continue;
      RatFn s;
      for (std::size_t k = 0; k < 4; ++k) s += RatFn((*c)[k]) * basis[k];
      CHECK(s == a3.at(i, j));
    }
}

TEST_CASE("lower-left block must vanish") {
  VarSystem a = variational_matrix(branch(), TimeScale::t);
  a.at(idx("x2"), idx("x1")) = RatFn(1);
  CHECK_THROWS_AS(extract_normal_block(a), InvarianceViolation);
}

TEST_CASE("signed permutation matching") {
  const VarSystem a3 = extract_normal_block(variational_matrix(branch(), TimeScale::x1));
  const auto self = match_up_to_signed_permutation(a3, a3);
  REQUIRE(self.found);
  // The identity is among the hits; a match is any consistent one.
  CHECK(apply_signed_permutation(a3, self.perm, self.sign, a3.ordering()) == a3);

  const VarSystem fx = printed_normal_block_fixture();
  const VarSystem swapped = apply_signed_permutation(fx, {0, 3, 2, 1}, {1, 1, 1, 1}, fx.ordering());
  CHECK(swapped.at(1, 1) == fx.at(3, 3));
  CHECK(swapped.at(0, 1) == fx.at(0, 3));
  const auto m = match_up_to_signed_permutation(fx, swapped);
  REQUIRE(m.found);
  CHECK(apply_signed_permutation(fx, m.perm, m.sign, fx.ordering()) == swapped);
  CHECK(m.candidates_checked <= 384);

  const auto d = match_up_to_signed_permutation(a3, printed_normal_block(branch().p3()));
  CHECK(d.found);
  CHECK(apply_signed_permutation(a3, d.perm, d.sign, fx.ordering()) == printed_normal_block(branch().p3()));
}

TEST_CASE("text round trip") {
  const VarSystem a3 = extract_normal_block(variational_matrix(branch(), TimeScale::x1));
  CHECK(VarSystem::parse(a3.serialize()) == a3);
  const VarSystem a8 = variational_matrix(branch(), TimeScale::t);
  CHECK(VarSystem::parse(a8.serialize()) == a8);
  CHECK_THROWS_AS(VarSystem::parse("varsystem 2\nw\n1\nx\n[1] ÷ [1]\n"), kni::ParseError);
  CHECK_THROWS_AS(VarSystem::parse("varsystem 1\nw\n2\nx y\n[1] ÷ [1]\n"), kni::ParseError);
}
