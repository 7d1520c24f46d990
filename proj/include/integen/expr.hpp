#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integen/bigint.hpp"
#include "integen/rational.hpp"

namespace integen {

enum class ExprKind {
  Add, Sub, Mul, Div, Pow,   // binary
  Neg, Ln, Exp, Arctan,      // unary
  Var, Int, ConstTok         // leaves; ConstTok only appears in canonicalized trees
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Pow exponents are integer leaves; negative
/// constants appear as Neg over a positive integer leaf.
struct Expr {
  ExprKind kind;
  BigInt value;  // Int payload
  ExprPtr a, b;

  Expr(ExprKind k, ExprPtr lhs, ExprPtr rhs) : kind(k), a(std::move(lhs)), b(std::move(rhs)) {}
  Expr(ExprKind k, ExprPtr child) : kind(k), a(std::move(child)) {}
  explicit Expr(BigInt v) : kind(ExprKind::Int), value(std::move(v)) {}
  explicit Expr(ExprKind k) : kind(k) {}
};

inline int expr_arity(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Pow:
      return 2;
    case ExprKind::Neg:
    case ExprKind::Ln:
    case ExprKind::Exp:
    case ExprKind::Arctan:
      return 1;
    default:
      return 0;
  }
}

inline ExprPtr mk(ExprKind k, ExprPtr a, ExprPtr b) {
  return std::make_shared<Expr>(k, std::move(a), std::move(b));
}
inline ExprPtr mk(ExprKind k, ExprPtr a) { return std::make_shared<Expr>(k, std::move(a)); }
inline ExprPtr mk_int(BigInt v) {
  if (v.is_negative())
    return mk(ExprKind::Neg, std::make_shared<Expr>(-std::move(v)));
  return std::make_shared<Expr>(std::move(v));
}
inline ExprPtr mk_int(long long v) { return mk_int(BigInt(v)); }
inline ExprPtr mk_x() { return std::make_shared<Expr>(ExprKind::Var); }
inline ExprPtr mk_const_tok() { return std::make_shared<Expr>(ExprKind::ConstTok); }

/// Rational constant as a tree: integers are single leaves, fractions are
/// div(p, q), negatives are Neg over the positive tree.
inline ExprPtr rational_expr(const Rational& r) {
  if (r.is_negative()) return mk(ExprKind::Neg, rational_expr(-r));
  if (r.is_integer()) return mk_int(r.num());
  return mk(ExprKind::Div, mk_int(r.num()), mk_int(r.den()));
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == ExprKind::Int && a->value != b->value) return false;
  int n = expr_arity(a->kind);
  if (n >= 1 && !expr_equal(a->a, b->a)) return false;
  if (n >= 2 && !expr_equal(a->b, b->b)) return false;
  return true;
}

/// Folds a list of signed terms into an add/sub chain, turning leading
/// negations into subtractions.
inline ExprPtr fold_terms(const std::vector<ExprPtr>& terms) {
  ExprPtr acc;
  for (const auto& t : terms) {
    if (!t) continue;
    if (!acc) {
      acc = t;
      continue;
    }
    if (t->kind == ExprKind::Neg)
      acc = mk(ExprKind::Sub, acc, t->a);
    else
      acc = mk(ExprKind::Add, acc, t);
  }
  if (!acc) acc = mk_int(0);
  return acc;
}

namespace detail {

inline int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

inline void render_infix(const ExprPtr& e, std::string& out, int parent_prec, bool right_side) {
  int prec = precedence(e->kind);
  bool parens = prec < parent_prec ||
                (prec == parent_prec && right_side &&
                 (e->kind == ExprKind::Add || e->kind == ExprKind::Sub ||
                  e->kind == ExprKind::Mul || e->kind == ExprKind::Div));
  switch (e->kind) {
    case ExprKind::Add:
    case ExprKind::Sub: {
      if (parens) out.push_back('(');
      render_infix(e->a, out, prec, false);
      out += e->kind == ExprKind::Add ? " + " : " - ";
      render_infix(e->b, out, prec, true);
      if (parens) out.push_back(')');
      break;
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
      if (parens) out.push_back('(');
      render_infix(e->a, out, prec, false);
      out.push_back(e->kind == ExprKind::Mul ? '*' : '/');
      render_infix(e->b, out, prec, true);
      if (parens) out.push_back(')');
      break;
    }
    case ExprKind::Pow: {
      if (parens) out.push_back('(');
      render_infix(e->a, out, prec + 1, false);  // pow binds its base tightly
      out.push_back('^');
      render_infix(e->b, out, prec, true);
      if (parens) out.push_back(')');
      break;
    }
    case ExprKind::Neg: {
      if (parens) out.push_back('(');
      out.push_back('-');
      render_infix(e->a, out, prec, true);
      if (parens) out.push_back(')');
      break;
    }
    case ExprKind::Ln:
    case ExprKind::Exp:
    case ExprKind::Arctan: {
      out += e->kind == ExprKind::Ln ? "ln" : (e->kind == ExprKind::Exp ? "exp" : "arctan");
      out.push_back('(');
      render_infix(e->a, out, 0, false);
      out.push_back(')');
      break;
    }
    case ExprKind::Var:
      out.push_back('x');
      break;
    case ExprKind::Int:
      out += e->value.to_string();
      break;
    case ExprKind::ConstTok:
      out += "CONST";
      break;
  }
}

}  // namespace detail

/// Human-readable parenthesized rendering with ln/exp/arctan function names.
inline std::string infix(const ExprPtr& e) {
  if (!e) throw std::invalid_argument("infix: null expression");
  std::string out;
  detail::render_infix(e, out, 0, false);
  return out;
}

}  // namespace integen
