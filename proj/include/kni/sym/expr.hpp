#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "kni/errors.hpp"
#include "kni/exact/cycnum.hpp"
#include "kni/exact/mpoly.hpp"
#include "kni/exact/ratfn.hpp"

namespace kni::sym {

using exact::CycNum;

/// Phase variables, the two radicals, and the control components.
enum class Var : std::uint8_t { x1, x2, x3, x4, p1, p2, p3, p4, r1, r2, u1, u2 };
inline constexpr int kVarCount = 12;

const char* var_name(Var v);
/// Position variables x1..x4 and their conjugate momenta p1..p4.
inline constexpr std::array<Var, 4> kPositions = {Var::x1, Var::x2, Var::x3, Var::x4};
inline constexpr std::array<Var, 4> kMomenta = {Var::p1, Var::p2, Var::p3, Var::p4};

enum class Op : std::uint8_t { Const, Variable, Add, Mul, Div, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  CycNum value;                  // Const
  Var var = Var::x1;             // Variable
  int exponent = 0;              // Pow
  std::vector<NodePtr> args;     // Add, Mul: n-ary; Div: (num, den); Pow: (base)
};

/// Immutable handle to an expression DAG node. Construction folds constants
/// and drops neutral elements but does no other simplification.
class Expr {
 public:
  Expr() : Expr(CycNum(0)) {}
  Expr(const CycNum& c);  // NOLINT
  Expr(long c) : Expr(CycNum(c)) {}  // NOLINT
  Expr(Var v);  // NOLINT
  explicit Expr(NodePtr n) : n_(std::move(n)) {}

  const Node& node() const { return *n_; }
  const NodePtr& ptr() const { return n_; }
  bool is_const() const { return n_->op == Op::Const; }
  bool is_zero() const { return is_const() && n_->value.is_zero(); }
  bool is_one() const { return is_const() && n_->value.is_one(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;
  Expr pow(int e) const;

  std::string pretty() const;

 private:
  NodePtr n_;
};

/// Partial derivative, with r1 = sqrt(x1^2 + x2^2) and r2 = sqrt(p3^2 + p4^2)
/// differentiated through their defining relations.
Expr differentiate(const Expr& e, Var v);

/// Replace a variable by an expression everywhere.
Expr substitute(const Expr& e, Var v, const Expr& by);

/// Whether e mentions v.
bool depends_on(const Expr& e, Var v);

// Ring traits for evaluation.
template <typename T>
struct Ring;

template <>
struct Ring<std::complex<double>> {
  static std::complex<double> lift(const CycNum& c) { return c.to_complex(); }
  static bool is_zero(const std::complex<double>& v) { return v == 0.0; }
};
template <>
struct Ring<CycNum> {
  static CycNum lift(const CycNum& c) { return c; }
  static bool is_zero(const CycNum& v) { return v.is_zero(); }
};
template <>
struct Ring<exact::RatFn> {
  static exact::RatFn lift(const CycNum& c) { return exact::RatFn(c); }
  static bool is_zero(const exact::RatFn& v) { return v.is_zero(); }
};
template <>
struct Ring<exact::MRat> {
  static exact::MRat lift(const CycNum& c) { return exact::MRat(exact::MPoly(0, c)); }
  static bool is_zero(const exact::MRat& v) { return v.is_zero(); }
};

template <typename T>
using Assignment = std::array<std::optional<T>, kVarCount>;

template <typename T>
T int_pow(const T& base, int e) {
  if (e < 0) {
    if (Ring<T>::is_zero(base)) throw SingularEvaluation("negative power of zero");
    return T(Ring<T>::lift(CycNum(1))) / int_pow(base, -e);
  }
  T r = Ring<T>::lift(CycNum(1)), b = base;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

/// Evaluate e over the ring T; every variable used must be assigned.
/// Shared subexpressions are evaluated once.
template <typename T>
T evaluate(const Expr& e, const Assignment<T>& at) {
  std::unordered_map<const Node*, T> memo;
  std::function<T(const NodePtr&)> go = [&](const NodePtr& n) -> T {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    T v;
    switch (n->op) {
      case Op::Const:
        v = Ring<T>::lift(n->value);
        break;
      case Op::Variable: {
        const auto& slot = at[static_cast<std::size_t>(n->var)];
        if (!slot) throw Error(std::string("evaluate: unassigned variable ") + var_name(n->var));
        v = *slot;
        break;
      }
      case Op::Add:
        v = go(n->args[0]);
        for (std::size_t k = 1; k < n->args.size(); ++k) v = v + go(n->args[k]);
        break;
      case Op::Mul:
        v = go(n->args[0]);
        for (std::size_t k = 1; k < n->args.size(); ++k) v = v * go(n->args[k]);
        break;
      case Op::Div: {
        const T d = go(n->args[1]);
        if (Ring<T>::is_zero(d)) throw SingularEvaluation("evaluate: zero denominator");
        v = go(n->args[0]) / d;
        break;
      }
      case Op::Pow:
        v = int_pow(go(n->args[0]), n->exponent);
        break;
    }
    memo.emplace(n.get(), v);
    return v;
  };
  return go(e.ptr());
}

/// Random exact point over K with r1^2 = x1^2 + x2^2 and r2^2 = p3^2 + p4^2,
/// controls set to u = (p3, p4)/r2.
Assignment<CycNum> random_consistent_point(std::mt19937_64& rng);

/// Probabilistic identity test: compares a and b at `points` random
/// consistent exact points (points where either side is singular are redrawn).
bool probably_equal(const Expr& a, const Expr& b, int points = 12, std::uint64_t seed = 0x5eed);

}  // namespace kni::sym
