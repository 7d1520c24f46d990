#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integen/expr.hpp"

namespace integen {

/// Pre-order (Polish) serialization; the token count is the length metric.
inline void to_prefix_into(const ExprPtr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case ExprKind::Add: out.push_back("add"); break;
    case ExprKind::Sub: out.push_back("sub"); break;
    case ExprKind::Mul: out.push_back("mul"); break;
    case ExprKind::Div: out.push_back("div"); break;
    case ExprKind::Pow: out.push_back("pow"); break;
    case ExprKind::Neg: out.push_back("neg"); break;
    case ExprKind::Ln: out.push_back("ln"); break;
    case ExprKind::Exp: out.push_back("exp"); break;
    case ExprKind::Arctan: out.push_back("arctan"); break;
    case ExprKind::Var: out.push_back("x"); return;
    case ExprKind::Int: out.push_back(e->value.to_string()); return;
    case ExprKind::ConstTok: out.push_back("CONST"); return;
  }
  int n = expr_arity(e->kind);
  if (n >= 1) to_prefix_into(e->a, out);
  if (n >= 2) to_prefix_into(e->b, out);
}

inline std::vector<std::string> to_prefix(const ExprPtr& e) {
  if (!e) throw std::invalid_argument("to_prefix: null expression");
  std::vector<std::string> out;
  to_prefix_into(e, out);
  return out;
}

struct PrefixParseError : std::runtime_error {
  std::size_t position;
  PrefixParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at token " + std::to_string(pos)), position(pos) {}
};

namespace detail {

inline bool is_integer_token(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = t[0] == '-' ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9') return false;
  return true;
}

inline ExprPtr parse_prefix(const std::vector<std::string>& toks, std::size_t& pos) {
  if (pos >= toks.size()) throw PrefixParseError("missing operand", pos);
  const std::string& t = toks[pos++];
  auto unary = [&](ExprKind k) { return mk(k, parse_prefix(toks, pos)); };
  auto binary = [&](ExprKind k) {
    ExprPtr a = parse_prefix(toks, pos);
    return mk(k, std::move(a), parse_prefix(toks, pos));
  };
  if (t == "add") return binary(ExprKind::Add);
  if (t == "sub") return binary(ExprKind::Sub);
  if (t == "mul") return binary(ExprKind::Mul);
  if (t == "div") return binary(ExprKind::Div);
  if (t == "pow") return binary(ExprKind::Pow);
  if (t == "neg") return unary(ExprKind::Neg);
  if (t == "ln") return unary(ExprKind::Ln);
  if (t == "exp") return unary(ExprKind::Exp);
  if (t == "arctan") return unary(ExprKind::Arctan);
  if (t == "x") return mk_x();
  if (t == "CONST") return mk_const_tok();
  if (is_integer_token(t)) return std::make_shared<Expr>(BigInt::from_string(t));
  throw PrefixParseError("unknown token '" + t + "'", pos - 1);
}

}  // namespace detail

/// Inverse of to_prefix; rejects truncated or over-long streams.
inline ExprPtr from_prefix(const std::vector<std::string>& tokens) {
  std::size_t pos = 0;
  ExprPtr e = detail::parse_prefix(tokens, pos);
  if (pos != tokens.size()) throw PrefixParseError("trailing tokens", pos);
  return e;
}

namespace detail {

// (tree, is-constant-subtree); maximal constant subtrees collapse to CONST,
// pow exponents stay untouched
inline std::pair<ExprPtr, bool> const_canon_rec(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Int:
    case ExprKind::ConstTok:
      return {mk_const_tok(), true};
    case ExprKind::Var:
      return {e, false};
    case ExprKind::Neg: {
      auto [a, ka] = const_canon_rec(e->a);
      if (ka) return {mk_const_tok(), true};
      return {mk(ExprKind::Neg, a), false};
    }
    case ExprKind::Ln:
    case ExprKind::Exp:
    case ExprKind::Arctan: {
      auto [a, ka] = const_canon_rec(e->a);
      return {mk(e->kind, a), false};
    }
    case ExprKind::Pow: {
      auto [a, ka] = const_canon_rec(e->a);
      if (ka) return {mk_const_tok(), true};
      return {mk(ExprKind::Pow, a, e->b), false};
    }
    default: {
      auto [a, ka] = const_canon_rec(e->a);
      auto [b, kb] = const_canon_rec(e->b);
      if (ka && kb) return {mk_const_tok(), true};
      return {mk(e->kind, a, b), false};
    }
  }
}

}  // namespace detail

/// Substitutes every maximal constant subtree (signs absorbed) with the CONST
/// token; pow exponents are preserved. Idempotent.
inline ExprPtr const_canonicalize(const ExprPtr& e) {
  return detail::const_canon_rec(e).first;
}

struct DatasetStats {
  std::size_t count = 0;
  std::map<std::size_t, std::size_t> integrand_length_hist;
  std::map<std::size_t, std::size_t> integral_length_hist;
  double close_fraction = 0.0;
  double unique_mod_const_fraction = 0.0;
};

/// Length/closeness/uniqueness statistics over (integrand, integral) prefix
/// token sequences. A pair is close when the length gap is under the
/// threshold; uniqueness counts distinct CONST-canonicalized integrands.
inline DatasetStats dataset_stats(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs,
    int closeness_threshold = 10) {
  if (pairs.empty()) throw std::invalid_argument("dataset_stats: empty dataset");
  DatasetStats st;
  st.count = pairs.size();
  std::size_t close = 0;
  std::set<std::string> unique;
  for (const auto& [integrand, integral] : pairs) {
    st.integrand_length_hist[integrand.size()]++;
    st.integral_length_hist[integral.size()]++;
    long long gap = static_cast<long long>(integrand.size()) -
                    static_cast<long long>(integral.size());
    if (gap < 0) gap = -gap;
    if (gap < closeness_threshold) ++close;

    ExprPtr tree = from_prefix(integrand);
    std::string key;
    for (const auto& tok : to_prefix(const_canonicalize(tree))) {
      key += tok;
      key.push_back(' ');
    }
    unique.insert(std::move(key));
  }
  st.close_fraction = static_cast<double>(close) / static_cast<double>(st.count);
  st.unique_mod_const_fraction =
      static_cast<double>(unique.size()) / static_cast<double>(st.count);
  return st;
}

}  // namespace integen
