#pragma once

#include <utility>
#include <vector>

#include "integen/expr.hpp"
#include "integen/liouville.hpp"
#include "integen/tower.hpp"

namespace integen {

ExprPtr to_expr(const FieldElem& e, const Tower& t);

/// theta_level expanded to its ln/exp tree.
inline ExprPtr theta_expr(const Tower& t, int level) {
  const Extension& ex = t.ext(level);
  ExprPtr arg = to_expr(ex.arg, t);
  return mk(ex.kind == ExtKind::Log ? ExprKind::Ln : ExprKind::Exp, std::move(arg));
}

namespace detail {

inline bool is_int_one(const ExprPtr& e) {
  return e->kind == ExprKind::Int && e->value == BigInt(1);
}

/// coefficient * var^deg as a tree; a Neg coefficient floats outward so the
/// term folds into a subtraction.
inline ExprPtr monomial_expr(ExprPtr coeff, const ExprPtr& var, int deg) {
  if (deg == 0) return coeff;
  ExprPtr pw = deg == 1 ? var : mk(ExprKind::Pow, var, mk_int(deg));
  if (is_int_one(coeff)) return pw;
  if (coeff->kind == ExprKind::Neg) {
    if (is_int_one(coeff->a)) return mk(ExprKind::Neg, pw);
    return mk(ExprKind::Neg, mk(ExprKind::Mul, coeff->a, pw));
  }
  return mk(ExprKind::Mul, std::move(coeff), pw);
}

template <class K, class CoeffExpr>
ExprPtr poly_expr(const Poly<K>& p, const ExprPtr& var, CoeffExpr&& coeff_expr) {
  if (p.is_zero_poly()) return mk_int(0);
  std::vector<ExprPtr> terms;
  for (int i = p.degree(); i >= 0; --i) {
    const K& c = p.coeffs[i];
    if (is_zero(c)) continue;
    terms.push_back(monomial_expr(coeff_expr(c), var, i));
  }
  return fold_terms(terms);
}

/// Monic denominators render through their square-free factorization:
/// (theta - 5)^2 instead of theta^2 - 10 theta + 25.
template <class K, class CoeffExpr>
ExprPtr den_expr(const Poly<K>& p, const ExprPtr& var, CoeffExpr&& coeff_expr) {
  if (p.degree() < 2) return poly_expr(p, var, coeff_expr);
  SquareFreeFactorization<K> sf = squarefree_factorize(p);
  if (sf.factors.size() == 1 && sf.factors[0].second == 1)
    return poly_expr(p, var, coeff_expr);
  ExprPtr acc;
  for (const auto& [f, m] : sf.factors) {
    ExprPtr fe = poly_expr(f, var, coeff_expr);
    if (m > 1) fe = mk(ExprKind::Pow, fe, mk_int(m));
    acc = acc ? mk(ExprKind::Mul, acc, fe) : fe;
  }
  return acc;
}

}  // namespace detail

inline ExprPtr to_expr(const FieldElem& e, const Tower& t) {
  if (e.level() == 0) {
    const RatFunc<Rational>& v = e.base();
    ExprPtr var = mk_x();
    auto ce = [](const Rational& r) { return rational_expr(r); };
    if (v.den.degree() == 0) return detail::poly_expr(v.num, var, ce);
    // denominators that are a bare power of x read better as Laurent sums:
    // (8x^2 - 7x + 2)/x  ->  8x - 7 + 2/x
    bool monomial_den = true;
    for (int i = 0; i < v.den.degree(); ++i) monomial_den &= v.den.coeffs[i].is_zero();
    if (monomial_den && v.den.lc().is_one()) {
      int k = v.den.degree();
      std::vector<ExprPtr> terms;
      for (int i = v.num.degree(); i >= 0; --i) {
        const Rational& c = v.num.coeffs[i];
        if (c.is_zero()) continue;
        if (i >= k) {
          terms.push_back(detail::monomial_expr(rational_expr(c), var, i - k));
        } else {
          ExprPtr dn = k - i == 1 ? var : mk(ExprKind::Pow, var, mk_int(k - i));
          bool neg = c.is_negative();
          ExprPtr piece = mk(ExprKind::Div, rational_expr(neg ? -c : c), dn);
          terms.push_back(neg ? mk(ExprKind::Neg, piece) : piece);
        }
      }
      return fold_terms(terms);
    }
    ExprPtr num = detail::poly_expr(v.num, var, ce);
    return mk(ExprKind::Div, num, detail::den_expr(v.den, var, ce));
  }
  const RatFunc<FieldElem>& v = e.up();
  ExprPtr var = theta_expr(t, e.level());
  auto ce = [&](const FieldElem& c) { return to_expr(c, t); };
  ExprPtr num = detail::poly_expr(v.num, var, ce);
  if (v.den.degree() == 0) return num;
  return mk(ExprKind::Div, num, detail::den_expr(v.den, var, ce));
}

/// "log(x);exp(x^2 + 1)" style summary used in dataset records.
inline std::string tower_description(const Tower& t) {
  std::string out;
  for (int lv = 1; lv <= t.height(); ++lv) {
    if (lv > 1) out.push_back(';');
    const Extension& ex = t.ext(lv);
    out += ex.kind == ExtKind::Log ? "log(" : "exp(";
    out += infix(to_expr(ex.arg, t));
    out.push_back(')');
  }
  return out;
}

inline ExprPtr to_expr(const LiouvilleForm& f, const Tower& t) {
  std::vector<ExprPtr> terms;
  if (!f.v0.is_zero_val()) terms.push_back(to_expr(f.v0, t));
  for (const auto& [c, v] : f.logs) {
    if (c.is_zero()) continue;
    terms.push_back(detail::monomial_expr(rational_expr(c),
                                          mk(ExprKind::Ln, to_expr(v, t)), 1));
  }
  for (const auto& [c, w] : f.arctans) {
    if (c.is_zero()) continue;
    terms.push_back(detail::monomial_expr(rational_expr(c),
                                          mk(ExprKind::Arctan, to_expr(w, t)), 1));
  }
  return fold_terms(terms);
}

}  // namespace integen
