#include "kni/sym/expr.hpp"

#include <sstream>

namespace kni::sym {

namespace {

NodePtr make_const(const CycNum& c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return n;
}

NodePtr make_nary(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

// Collect operands of an n-ary node, flattening children of the same kind
// and folding constants.
Expr build_nary(Op op, const Expr& a, const Expr& b) {
  const bool add = op == Op::Add;
  CycNum acc = add ? CycNum(0) : CycNum(1);
  std::vector<NodePtr> rest;
  for (const Expr* e : {&a, &b}) {
    const Node& n = e->node();
    if (n.op == Op::Const) {
      acc = add ? acc + n.value : acc * n.value;
    } else if (n.op == op) {
      for (const auto& c : n.args) {
        if (c->op == Op::Const) acc = add ? acc + c->value : acc * c->value;
        else rest.push_back(c);
      }
    } else {
      rest.push_back(e->ptr());
    }
  }
  if (!add && acc.is_zero()) return Expr(CycNum(0));
  const bool neutral = add ? acc.is_zero() : acc.is_one();
  if (rest.empty()) return Expr(acc);
  if (!neutral) rest.insert(rest.begin(), make_const(acc));
  if (rest.size() == 1) return Expr(rest.front());
  return Expr(make_nary(op, std::move(rest)));
}

void print(std::ostream& os, const NodePtr& n, int parent_prec) {
  // Precedence: 1 add, 2 mul/div, 3 pow, 4 atom.
  switch (n->op) {
    case Op::Const: {
      const std::string s = n->value.pretty();
      const bool compound = s.find_first_of("+-", 1) != std::string::npos || s.find('/') != std::string::npos;
      if (compound && parent_prec > 1) os << "(" << s << ")";
      else os << s;
      return;
    }
    case Op::Variable:
      os << var_name(n->var);
      return;
    case Op::Add: {
      if (parent_prec > 1) os << "(";
      for (std::size_t k = 0; k < n->args.size(); ++k) {
        if (k) os << " + ";
        print(os, n->args[k], 1);
      }
      if (parent_prec > 1) os << ")";
      return;
    }
    case Op::Mul: {
      if (parent_prec > 2) os << "(";
      for (std::size_t k = 0; k < n->args.size(); ++k) {
        if (k) os << "*";
        print(os, n->args[k], 2);
      }
      if (parent_prec > 2) os << ")";
      return;
    }
    case Op::Div:
      if (parent_prec > 2) os << "(";
      print(os, n->args[0], 2);
      os << "/";
      print(os, n->args[1], 3);
      if (parent_prec > 2) os << ")";
      return;
    case Op::Pow:
      print(os, n->args[0], 4);
      os << "^" << (n->exponent < 0 ? "(" + std::to_string(n->exponent) + ")" : std::to_string(n->exponent));
      return;
  }
}

CycNum random_small(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
  std::uniform_int_distribution<int> slot(0, 7);
  std::array<exact::Rational, 8> c{};
  for (int k = 0; k < 3; ++k) {
    exact::Rational q(num(rng), den(rng));
    q.canonicalize();
    c[static_cast<std::size_t>(slot(rng))] += q;
  }
  return CycNum(c);
}

CycNum random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    CycNum c = random_small(rng);
    if (!c.is_zero()) return c;
  }
}

}  // namespace

const char* var_name(Var v) {
  static constexpr std::array<const char*, kVarCount> names = {
      "x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4", "r1", "r2", "u1", "u2"};
  return names[static_cast<std::size_t>(v)];
}

Expr::Expr(const CycNum& c) : n_(make_const(c)) {}

Expr::Expr(Var v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->var = v;
  n_ = n;
}

Expr operator+(const Expr& a, const Expr& b) { return build_nary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) { return build_nary(Op::Mul, a, b); }

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("Expr division");
  if (a.is_zero()) return Expr(CycNum(0));
  if (b.is_const()) return a * Expr(b.node().value.inverse());
  return Expr(make_nary(Op::Div, {a.ptr(), b.ptr()}));
}

Expr Expr::operator-() const { return Expr(CycNum(-1)) * *this; }

Expr Expr::pow(int e) const {
  if (e == 0) return Expr(CycNum(1));
  if (e == 1) return *this;
  if (is_const()) return Expr(n_->value.pow(e));
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->exponent = e;
  n->args = {n_};
  return Expr(NodePtr(n));
}

std::string Expr::pretty() const {
  std::ostringstream os;
  print(os, n_, 0);
  return os.str();
}

Expr differentiate(const Expr& e, Var v) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const NodePtr&)> go = [&](const NodePtr& n) -> Expr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    Expr d;
    switch (n->op) {
      case Op::Const:
        break;
      case Op::Variable:
        if (n->var == v) {
          d = Expr(CycNum(1));
        } else if (n->var == Var::r1 && (v == Var::x1 || v == Var::x2)) {
          d = Expr(v) / Expr(Var::r1);
        } else if (n->var == Var::r2 && (v == Var::p3 || v == Var::p4)) {
          d = Expr(v) / Expr(Var::r2);
        }
        break;
      case Op::Add:
        for (const auto& a : n->args) d = d + go(a);
        break;
      case Op::Mul:
        for (std::size_t k = 0; k < n->args.size(); ++k) {
          Expr dk = go(n->args[k]);
          if (dk.is_zero()) continue;
          Expr term = dk;
          for (std::size_t j = 0; j < n->args.size(); ++j)
            if (j != k) term = term * Expr(n->args[j]);
          d = d + term;
        }
        break;
      case Op::Div: {
        const Expr num(n->args[0]), den(n->args[1]);
        const Expr dn = go(n->args[0]), dd = go(n->args[1]);
        if (dd.is_zero()) d = dn / den;
        else d = (dn * den - num * dd) / den.pow(2);
        break;
      }
      case Op::Pow: {
        const Expr base(n->args[0]);
        d = Expr(CycNum(n->exponent)) * base.pow(n->exponent - 1) * go(n->args[0]);
        break;
      }
    }
    memo.emplace(n.get(), d);
    return d;
  };
  return go(e.ptr());
}

Expr substitute(const Expr& e, Var v, const Expr& by) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const NodePtr&)> go = [&](const NodePtr& n) -> Expr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    Expr r;
    switch (n->op) {
      case Op::Const:
        r = Expr(n);
        break;
      case Op::Variable:
        r = n->var == v ? by : Expr(n);
        break;
      case Op::Add:
        for (const auto& a : n->args) r = r + go(a);
        break;
      case Op::Mul:
        r = Expr(CycNum(1));
        for (const auto& a : n->args) r = r * go(a);
        break;
      case Op::Div:
        r = go(n->args[0]) / go(n->args[1]);
        break;
      case Op::Pow:
        r = go(n->args[0]).pow(n->exponent);
        break;
    }
    memo.emplace(n.get(), r);
    return r;
  };
  return go(e.ptr());
}

bool depends_on(const Expr& e, Var v) {
  std::function<bool(const Node&)> go = [&](const Node& n) {
    if (n.op == Op::Variable) return n.var == v;
    for (const auto& a : n.args)
      if (go(*a)) return true;
    return false;
  };
  return go(e.node());
}

Assignment<CycNum> random_consistent_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(1, 6);
  Assignment<CycNum> at;
  auto triple = [&](Var a, Var b, Var r) {
    long m = small(rng), n = small(rng);
    while (n == m) n = small(rng);
    const CycNum s = random_nonzero(rng);
    at[static_cast<std::size_t>(a)] = s * CycNum(m * m - n * n);
    at[static_cast<std::size_t>(b)] = s * CycNum(2 * m * n);
    at[static_cast<std::size_t>(r)] = s * CycNum(m * m + n * n);
  };
  triple(Var::x1, Var::x2, Var::r1);
  triple(Var::p3, Var::p4, Var::r2);
  for (Var v : {Var::x3, Var::x4, Var::p1, Var::p2}) at[static_cast<std::size_t>(v)] = random_small(rng);
  const CycNum inv_r2 = at[static_cast<std::size_t>(Var::r2)]->inverse();
  at[static_cast<std::size_t>(Var::u1)] = *at[static_cast<std::size_t>(Var::p3)] * inv_r2;
  at[static_cast<std::size_t>(Var::u2)] = *at[static_cast<std::size_t>(Var::p4)] * inv_r2;
  return at;
}

bool probably_equal(const Expr& a, const Expr& b, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int checked = 0, attempts = 0;
  while (checked < points) {
    if (++attempts > 20 * points) throw Error("probably_equal: too many singular sample points");
    const auto at = random_consistent_point(rng);
    CycNum va, vb;
    try {
      va = evaluate<CycNum>(a, at);
      vb = evaluate<CycNum>(b, at);
    } catch (const SingularEvaluation&) {
      continue;
    } catch (const DivisionByZero&) {
      continue;
    }
    if (va != vb) return false;
    ++checked;
  }
  return true;
}

}  // namespace kni::sym
