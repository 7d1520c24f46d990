#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "integen/dataset.hpp"
#include "integen/generator.hpp"
#include "integen/towerexpr.hpp"

namespace integen {

/// One JSON Lines dataset record. Field order is fixed by the file format.
struct DatasetRecord {
  std::uint64_t id = 0;
  std::string method;
  std::string tower;
  std::uint64_t seed = 0;
  std::string integrand_infix;
  std::string integral_infix;
  std::vector<std::string> integrand_prefix;
  std::vector<std::string> integral_prefix;
  bool verified = false;
};

inline DatasetRecord record_from_pair(const IntegrablePair& pair, std::uint64_t id) {
  DatasetRecord r;
  r.id = id;
  r.method = method_name(pair.method);
  r.tower = tower_description(pair.tower);
  r.seed = pair.item_seed;
  r.integrand_infix = infix(pair.integrand);
  r.integral_infix = infix(pair.integral);
  r.integrand_prefix = to_prefix(pair.integrand);
  r.integral_prefix = to_prefix(pair.integral);
  r.verified = pair.verified;
  return r;
}

inline void write_record(std::ostream& os, const DatasetRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["method"] = r.method;
  j["tower"] = r.tower;
  j["seed"] = r.seed;
  j["integrand_infix"] = r.integrand_infix;
  j["integral_infix"] = r.integral_infix;
  j["integrand_prefix"] = r.integrand_prefix;
  j["integral_prefix"] = r.integral_prefix;
  j["verified"] = r.verified;
  os << j.dump() << '\n';
}

struct RecordLoad {
  std::size_t line = 0;
  std::optional<DatasetRecord> record;
  std::string error;  // nonempty when the line failed to parse
};

inline std::vector<RecordLoad> read_records(std::istream& is) {
  std::vector<RecordLoad> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    RecordLoad load;
    load.line = lineno;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      DatasetRecord r;
      r.id = j.at("id").get<std::uint64_t>();
      r.method = j.at("method").get<std::string>();
      r.tower = j.at("tower").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.integrand_infix = j.at("integrand_infix").get<std::string>();
      r.integral_infix = j.at("integral_infix").get<std::string>();
      r.integrand_prefix = j.at("integrand_prefix").get<std::vector<std::string>>();
      r.integral_prefix = j.at("integral_prefix").get<std::vector<std::string>>();
      r.verified = j.at("verified").get<bool>();
      load.record = std::move(r);
    } catch (const std::exception& e) {
      load.error = e.what();
    }
    out.push_back(std::move(load));
  }
  return out;
}

namespace detail {

/// Minimal infix parser for tower-argument expressions: integers, x, the four
/// arithmetic operators, ^ with integer exponents, parentheses.
class ArgParser {
 public:
  explicit ArgParser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = parse_binary(0);
    skip_ws();
    if (pos_ != s_.size())
      throw std::invalid_argument("tower argument: trailing input at " + std::to_string(pos_));
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  int binding(char op) const {
    switch (op) {
      case '+':
      case '-': return 10;
      case '*':
      case '/': return 20;
      case '^': return 30;
      default: return -1;
    }
  }

  ExprPtr parse_binary(int min_bind) {
    ExprPtr left = parse_unary();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) return left;
      char op = s_[pos_];
      int bind = binding(op);
      if (bind < min_bind || bind < 0) return left;
      ++pos_;
      // ^ is right-associative, the rest left-associative
      ExprPtr right = parse_binary(op == '^' ? bind : bind + 1);
      switch (op) {
        case '+': left = mk(ExprKind::Add, left, right); break;
        case '-': left = mk(ExprKind::Sub, left, right); break;
        case '*': left = mk(ExprKind::Mul, left, right); break;
        case '/': left = mk(ExprKind::Div, left, right); break;
        default: left = mk(ExprKind::Pow, left, right); break;
      }
    }
  }

  ExprPtr parse_unary() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return mk(ExprKind::Neg, parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw std::invalid_argument("tower argument: unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_binary(0);
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw std::invalid_argument("tower argument: missing ')'");
      ++pos_;
      return e;
    }
    if (c == 'x') {
      ++pos_;
      return mk_x();
    }
    if (c >= '0' && c <= '9') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
      return mk_int(BigInt::from_string(s_.substr(start, pos_ - start)));
    }
    throw std::invalid_argument(std::string("tower argument: unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::optional<Rational> eval_const_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Int: return Rational(e->value);
    case ExprKind::Neg: {
      auto a = eval_const_expr(e->a);
      if (!a) return std::nullopt;
      return -*a;
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      auto a = eval_const_expr(e->a);
      auto b = eval_const_expr(e->b);
      if (!a || !b) return std::nullopt;
      switch (e->kind) {
        case ExprKind::Add: return *a + *b;
        case ExprKind::Sub: return *a - *b;
        case ExprKind::Mul: return *a * *b;
        default:
          if (b->is_zero()) return std::nullopt;
          return *a / *b;
      }
    }
    case ExprKind::Pow: {
      auto a = eval_const_expr(e->a);
      if (!a || e->b->kind != ExprKind::Int || !e->b->value.fits_int64()) return std::nullopt;
      return a->pow(e->b->value.to_int64());
    }
    default:
      return std::nullopt;
  }
}

/// Interprets an expression tree as a tower element: ln/exp nodes must match
/// an extension argument exactly. Throws when the tree leaves the tower.
inline FieldElem expr_to_elem(const ExprPtr& e, const Tower& t) {
  switch (e->kind) {
    case ExprKind::Var: return FieldElem::var_x();
    case ExprKind::Int: return FieldElem(Rational(e->value));
    case ExprKind::ConstTok:
      throw std::invalid_argument("expr_to_elem: CONST token is not a value");
    case ExprKind::Add: return expr_to_elem(e->a, t) + expr_to_elem(e->b, t);
    case ExprKind::Sub: return expr_to_elem(e->a, t) - expr_to_elem(e->b, t);
    case ExprKind::Mul: return expr_to_elem(e->a, t) * expr_to_elem(e->b, t);
    case ExprKind::Div: return expr_to_elem(e->a, t) / expr_to_elem(e->b, t);
    case ExprKind::Neg: return -expr_to_elem(e->a, t);
    case ExprKind::Pow: {
      ExprPtr ex = e->b;
      bool neg = false;
      if (ex->kind == ExprKind::Neg) {
        neg = true;
        ex = ex->a;
      }
      if (ex->kind != ExprKind::Int || !ex->value.fits_int64())
        throw std::invalid_argument("expr_to_elem: pow exponent must be an integer");
      long long p = ex->value.to_int64();
      return expr_to_elem(e->a, t).pow(neg ? -p : p);
    }
    case ExprKind::Ln:
    case ExprKind::Exp: {
      FieldElem arg = expr_to_elem(e->a, t);
      ExtKind want = e->kind == ExprKind::Ln ? ExtKind::Log : ExtKind::Exp;
      for (int lv = 1; lv <= t.height(); ++lv)
        if (t.ext(lv).kind == want && t.ext(lv).arg == arg) return t.theta(lv);
      throw std::invalid_argument("expr_to_elem: function argument is not a tower extension");
    }
    default:
      throw std::invalid_argument("expr_to_elem: arctan is not a tower element");
  }
}

/// Parses "log(x);exp(x^2 + 1)" back into a Tower.
inline Tower parse_tower_description(const std::string& desc) {
  Tower t;
  if (desc.empty()) return t;
  std::size_t pos = 0;
  while (pos < desc.size()) {
    std::size_t end = desc.find(';', pos);
    if (end == std::string::npos) end = desc.size();
    std::string part = desc.substr(pos, end - pos);
    pos = end + 1;
    ExtKind kind;
    std::string inner;
    if (part.rfind("log(", 0) == 0 && part.back() == ')') {
      kind = ExtKind::Log;
      inner = part.substr(4, part.size() - 5);
    } else if (part.rfind("exp(", 0) == 0 && part.back() == ')') {
      kind = ExtKind::Exp;
      inner = part.substr(4, part.size() - 5);
    } else {
      throw std::invalid_argument("tower description: expected log(...) or exp(...)");
    }
    ExprPtr arg = detail::ArgParser(inner).parse();
    t.push(kind, expr_to_elem(arg, t));
  }
  return t;
}

/// Decomposes an integral expression into Liouville shape: a sum of tower
/// elements, constant-weighted ln terms, and constant-weighted arctan terms.
inline LiouvilleForm expr_to_liouville(const ExprPtr& e, const Tower& t) {
  LiouvilleForm form;
  struct Walker {
    LiouvilleForm& form;
    const Tower& t;
    void walk(const ExprPtr& node, bool negate) {
      switch (node->kind) {
        case ExprKind::Add:
          walk(node->a, negate);
          walk(node->b, negate);
          return;
        case ExprKind::Sub:
          walk(node->a, negate);
          walk(node->b, !negate);
          return;
        case ExprKind::Neg:
          walk(node->a, !negate);
          return;
        default:
          term(node, negate);
      }
    }
    void term(const ExprPtr& node, bool negate) {
      Rational c(1);
      ExprPtr body = node;
      if (node->kind == ExprKind::Mul) {
        if (auto lhs = eval_const_expr(node->a)) {
          c = *lhs;
          body = node->b;
        } else if (auto rhs = eval_const_expr(node->b)) {
          c = *rhs;
          body = node->a;
        }
      }
      if (negate) c = -c;
      if (body->kind == ExprKind::Ln) {
        // ln of a tower element is a log term unless it is itself a theta
        FieldElem arg = expr_to_elem(body->a, t);
        form.logs.emplace_back(c, arg);
        return;
      }
      if (body->kind == ExprKind::Arctan) {
        form.arctans.emplace_back(c, expr_to_elem(body->a, t));
        return;
      }
      FieldElem v = expr_to_elem(node, t);
      form.v0 = negate ? form.v0 - v : form.v0 + v;
    }
  } walker{form, t};
  walker.walk(e, false);
  return form;
}

}  // namespace integen
