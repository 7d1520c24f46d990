#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integen/algebra.hpp"
#include "integen/poly.hpp"
#include "integen/ratfunc.hpp"
#include "integen/rational.hpp"

namespace integen {

class FieldElem;

/// An element of F_n = Q(x)(theta_1, ..., theta_n). Level 0 holds a rational
/// function in x over Q; level k >= 1 holds a rational function in theta_k
/// whose coefficients are elements of lower levels.
///
/// Canonical form is enforced everywhere: fractions are reduced and
/// monic-denominator at every level, and an element is always stored at the
/// lowest level that can represent it. A value is therefore zero iff it is the
/// level-0 zero, and structural equality coincides with mathematical equality
/// (theta's are treated as transcendental).
class FieldElem {
 public:
  FieldElem() : level_(0), base_() {}
  explicit FieldElem(RatFunc<Rational> v) : level_(0), base_(std::move(v)) {}
  explicit FieldElem(Rational r)
      : level_(0), base_(Poly<Rational>::constant(std::move(r))) {}

  /// Builds a level >= 1 element, compressing degree-0 values down a level.
  static FieldElem make(int level, RatFunc<FieldElem> v);

  static FieldElem zero() { return FieldElem(); }
  static FieldElem one() { return FieldElem(Rational(1)); }
  static FieldElem from_int(long long v) { return FieldElem(Rational(v)); }

  /// The base variable x (a level-0 element).
  static FieldElem var_x() {
    return FieldElem(RatFunc<Rational>(Poly<Rational>{Rational(0), Rational(1)}));
  }

  int level() const { return level_; }
  const RatFunc<Rational>& base() const {
    if (level_ != 0) throw std::logic_error("FieldElem: base() on lifted element");
    return base_;
  }
  const RatFunc<FieldElem>& up() const {
    if (level_ == 0) throw std::logic_error("FieldElem: up() on base element");
    return *up_;
  }

  bool is_zero_val() const { return level_ == 0 && base_.is_zero_val(); }
  bool is_one_val() const {
    return level_ == 0 && base_.num == Poly<Rational>{Rational(1)} && base_.den.degree() == 0;
  }

  /// The element as a rational constant, if it is one.
  std::optional<Rational> as_rational() const {
    if (level_ != 0) return std::nullopt;
    if (base_.num.degree() > 0 || base_.den.degree() > 0) return std::nullopt;
    if (base_.num.is_zero_poly()) return Rational(0);
    return base_.num.coeffs[0];
  }
  bool is_rational_const() const { return as_rational().has_value(); }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    return binary(a, b, Op::Add);
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    return binary(a, b, Op::Sub);
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    return binary(a, b, Op::Mul);
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    if (b.is_zero_val()) throw std::domain_error("FieldElem: division by zero");
    return binary(a, b, Op::Div);
  }
  FieldElem operator-() const;
  FieldElem inverse() const {
    if (is_zero_val()) throw std::domain_error("FieldElem: inverse of zero");
    return FieldElem::one() / *this;
  }

  FieldElem pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem acc = FieldElem::one(), b = *this;
    while (e > 0) {
      if (e & 1) acc = acc * b;
      b = b * b;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.level_ != b.level_) return false;
    if (a.level_ == 0) return a.base_ == b.base_;
    return *a.up_ == *b.up_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  /// Views the element as a rational function in theta_level; the element's
  /// own level must not exceed `level`.
  RatFunc<FieldElem> as_ratfunc_at(int level) const;

  std::string to_string() const;  // debugging aid, defined in towerfmt below

 private:
  enum class Op { Add, Sub, Mul, Div };

  static FieldElem binary(const FieldElem& a, const FieldElem& b, Op op);

  int level_;
  RatFunc<Rational> base_;                          // level == 0 payload
  std::shared_ptr<const RatFunc<FieldElem>> up_;    // level >= 1 payload
};

inline bool is_zero(const FieldElem& e) { return e.is_zero_val(); }
inline FieldElem zero_like(const FieldElem&) { return FieldElem::zero(); }
inline FieldElem one_like(const FieldElem&) { return FieldElem::one(); }
inline FieldElem int_like(const FieldElem&, long long v) { return FieldElem::from_int(v); }

/// FieldElem as a fraction of multivariate polynomials (denominators cleared
/// recursively). Feeds the MPoly gcd engine.
std::pair<MPoly, MPoly> elem_to_mpoly(const FieldElem& e);

/// Clears the coefficient denominators of a polynomial viewed in a variable at
/// level var_level; returns (P, D) with p = P / D and D of lower level.
inline std::pair<MPoly, MPoly> poly_to_mpoly(const Poly<FieldElem>& p, int var_level) {
  std::vector<std::pair<MPoly, MPoly>> parts;
  parts.reserve(p.coeffs.size());
  MPoly den = MPoly::one();
  for (const auto& c : p.coeffs) {
    auto nd = elem_to_mpoly(c);
    MPoly g = m_gcd(den, nd.second);
    den = m_exact_div(m_mul(den, nd.second), g);
    parts.push_back(std::move(nd));
  }
  std::vector<MPoly> coeffs;
  coeffs.reserve(parts.size());
  for (auto& [n, d] : parts) coeffs.push_back(m_mul(n, m_exact_div(den, d)));
  return {MPoly::make(var_level, std::move(coeffs)), std::move(den)};
}

inline std::pair<MPoly, MPoly> elem_to_mpoly(const FieldElem& e) {
  if (e.level() == 0) {
    const RatFunc<Rational>& v = e.base();
    return {MPoly::base_poly(v.num.coeffs), MPoly::base_poly(v.den.coeffs)};
  }
  const RatFunc<FieldElem>& v = e.up();
  auto [num, dnum] = poly_to_mpoly(v.num, e.level());
  auto [den, dden] = poly_to_mpoly(v.den, e.level());
  return {m_mul(num, dden), m_mul(den, dnum)};
}

inline FieldElem mpoly_to_elem(const MPoly& m) {
  if (m.level() == 0) {
    std::vector<Rational> c;
    for (const auto& q : m.coeffs_at(0)) c.push_back(q.as_rational());
    return FieldElem(RatFunc<Rational>(Poly<Rational>(std::move(c))));
  }
  std::vector<FieldElem> coeffs;
  for (const auto& q : m.coeffs_at(m.level())) coeffs.push_back(mpoly_to_elem(q));
  return FieldElem::make(m.level(),
                         RatFunc<FieldElem>(Poly<FieldElem>(std::move(coeffs))));
}

/// Monic gcd of polynomials with tower-element coefficients. Routed through
/// the denominator-cleared subresultant PRS; the fraction-field result is the
/// cleared gcd stripped of lower-level content and re-monicized.
inline Poly<FieldElem> poly_gcd(const Poly<FieldElem>& a, const Poly<FieldElem>& b) {
  if (a.is_zero_poly() && b.is_zero_poly())
    throw std::domain_error("poly_gcd: gcd(0, 0) undefined");
  if (a.is_zero_poly()) return poly_monic(b);
  if (b.is_zero_poly()) return poly_monic(a);
  if (a.degree() == 0 || b.degree() == 0) return Poly<FieldElem>{FieldElem::one()};
  int var = 0;
  for (const auto& c : a.coeffs) var = std::max(var, c.level());
  for (const auto& c : b.coeffs) var = std::max(var, c.level());
  ++var;
  MPoly ma = poly_to_mpoly(a, var).first;
  MPoly mb = poly_to_mpoly(b, var).first;
  MPoly g = m_gcd(ma, mb);
  if (g.degree_at(var) <= 0) return Poly<FieldElem>{FieldElem::one()};
  std::vector<FieldElem> coeffs;
  for (const auto& c : g.coeffs_at(var)) coeffs.push_back(mpoly_to_elem(c));
  return poly_monic(Poly<FieldElem>(std::move(coeffs)));
}

inline std::string FieldElem::to_string() const {
  auto poly_str = [](const auto& p, const std::string& var, auto&& coeff_str) {
    if (p.is_zero_poly()) return std::string("0");
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
      if (is_zero(p.coeffs[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeff_str(p.coeffs[i]) + ")";
      if (i >= 1) s += "*" + var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  };
  if (level_ == 0) {
    auto cs = [](const Rational& r) { return r.to_string(); };
    std::string n = poly_str(base_.num, "x", cs);
    if (base_.den.degree() == 0) return n;
    return "(" + n + ")/(" + poly_str(base_.den, "x", cs) + ")";
  }
  std::string var = "t" + std::to_string(level_);
  auto cs = [](const FieldElem& c) { return c.to_string(); };
  std::string n = poly_str(up_->num, var, cs);
  if (up_->den.degree() == 0) return n;
  return "(" + n + ")/(" + poly_str(up_->den, var, cs) + ")";
}

inline FieldElem FieldElem::make(int level, RatFunc<FieldElem> v) {
  if (level < 1) throw std::logic_error("FieldElem::make: level must be >= 1");
  if (v.num.degree() <= 0 && v.den.degree() == 0) {
    // degree-0 value: unwrap to the coefficient itself
    if (v.num.is_zero_poly()) return FieldElem::zero();
    FieldElem c = v.num.coeffs[0] / v.den.coeffs[0];
    if (c.level() >= level) throw std::logic_error("FieldElem::make: coefficient level too high");
    return c;
  }
  for (const auto& c : v.num.coeffs)
    if (c.level() >= level) throw std::logic_error("FieldElem::make: coefficient level too high");
  for (const auto& c : v.den.coeffs)
    if (c.level() >= level) throw std::logic_error("FieldElem::make: coefficient level too high");
  FieldElem e;
  e.level_ = level;
  e.up_ = std::make_shared<RatFunc<FieldElem>>(std::move(v));
  return e;
}

inline RatFunc<FieldElem> FieldElem::as_ratfunc_at(int level) const {
  if (level_ > level) throw std::logic_error("FieldElem: cannot view at lower level");
  if (level_ == level && level_ > 0) return *up_;
  RatFunc<FieldElem> r;
  r.num = Poly<FieldElem>::constant(*this);
  r.den = Poly<FieldElem>::constant(FieldElem::one());
  return r;
}

inline FieldElem FieldElem::operator-() const {
  if (level_ == 0) return FieldElem(-base_);
  return make(level_, -*up_);
}

inline FieldElem FieldElem::binary(const FieldElem& a, const FieldElem& b, Op op) {
  int level = std::max(a.level_, b.level_);
  if (level == 0) {
    switch (op) {
      case Op::Add: return FieldElem(a.base_ + b.base_);
      case Op::Sub: return FieldElem(a.base_ - b.base_);
      case Op::Mul: return FieldElem(a.base_ * b.base_);
      case Op::Div: return FieldElem(a.base_ / b.base_);
    }
  }
  RatFunc<FieldElem> av = a.as_ratfunc_at(level);
  RatFunc<FieldElem> bv = b.as_ratfunc_at(level);
  switch (op) {
    case Op::Add: return make(level, av + bv);
    case Op::Sub: return make(level, av - bv);
    case Op::Mul: return make(level, av * bv);
    case Op::Div: return make(level, av / bv);
  }
  throw std::logic_error("unreachable");
}

enum class ExtKind { Log, Exp };

/// One elementary extension theta = log(arg) or theta = exp(arg); the argument
/// lives strictly below the extension's level.
struct Extension {
  ExtKind kind;
  FieldElem arg;
};

/// The differential field tower Q(x) = F_0 c F_1 c ... c F_n.
class Tower {
 public:
  Tower() = default;

  int height() const { return static_cast<int>(exts_.size()); }

  const Extension& ext(int level) const {
    if (level < 1 || level > height()) throw std::out_of_range("Tower: bad level");
    return exts_[level - 1];
  }

  /// Appends an extension after validating it against the tower built so far.
  /// The transcendence safeguard is syntactic: it rejects the directly visible
  /// algebraic dependencies (log of an exp-monomial, exp of a rational multiple
  /// of a log variable, constant arguments) but is not a structure theorem.
  void push(ExtKind kind, FieldElem arg) {
    int level = height() + 1;
    if (arg.level() >= level) throw std::invalid_argument("Tower: argument level too high");
    if (arg.is_rational_const())
      throw std::invalid_argument("Tower: extension argument must be nonconstant");
    if (kind == ExtKind::Log) {
      if (arg.is_zero_val()) throw std::invalid_argument("Tower: log of zero");
      if (is_exp_monomial(arg))
        throw std::invalid_argument("Tower: log of an exp-variable power is algebraic");
    } else {
      if (is_log_multiple(arg))
        throw std::invalid_argument("Tower: exp of a multiple of a log variable is algebraic");
    }
    exts_.push_back(Extension{kind, std::move(arg)});
  }

  /// The element theta_level.
  FieldElem theta(int level) const {
    if (level < 1 || level > height()) throw std::out_of_range("Tower: bad level");
    RatFunc<FieldElem> v;
    v.num = Poly<FieldElem>{FieldElem::zero(), FieldElem::one()};
    v.den = Poly<FieldElem>::constant(FieldElem::one());
    return FieldElem::make(level, std::move(v));
  }

 private:
  bool is_exp_monomial(const FieldElem& arg) const {
    int lv = arg.level();
    if (lv == 0) return false;
    if (ext(lv).kind != ExtKind::Exp) return false;
    const auto& v = arg.up();
    // c * theta^k  or  c / theta^k
    auto monomial = [](const Poly<FieldElem>& p) {
      int nonzero = 0;
      for (const auto& c : p.coeffs) nonzero += !is_zero(c);
      return nonzero == 1;
    };
    return (v.den.degree() == 0 && monomial(v.num)) ||
           (v.num.degree() == 0 && monomial(v.den));
  }

  bool is_log_multiple(const FieldElem& arg) const {
    int lv = arg.level();
    if (lv == 0) return false;
    if (ext(lv).kind != ExtKind::Log) return false;
    const auto& v = arg.up();
    return v.den.degree() == 0 && v.num.degree() == 1 && is_zero(v.num.coeffs[0]) &&
           v.num.coeffs[1].is_rational_const();
  }

  std::vector<Extension> exts_;
};

FieldElem derive(const FieldElem& e, const Tower& t);

/// Derivation of a polynomial in the level's variable: coefficients
/// differentiate recursively, and the variable contributes via D(x) = 1,
/// D(theta) = D(u)/u for theta = log(u), D(theta) = D(u) theta for
/// theta = exp(u).
inline Poly<FieldElem> poly_tower_derivative(const Poly<FieldElem>& p, const Tower& t,
                                             int var_level) {
  Poly<FieldElem> out;
  if (p.is_zero_poly()) return out;

  // coefficient part
  std::vector<FieldElem> dc(p.coeffs.size(), FieldElem::zero());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) dc[i] = derive(p.coeffs[i], t);
  out = Poly<FieldElem>(std::move(dc));

  if (p.degree() < 1) return out;
  if (var_level == 0) {
    out = poly_add(out, poly_derivative(p));
    return out;
  }
  const Extension& ex = t.ext(var_level);
  FieldElem du = derive(ex.arg, t);
  if (ex.kind == ExtKind::Log) {
    FieldElem dtheta = du / ex.arg;
    std::vector<FieldElem> shift(p.coeffs.size() - 1, FieldElem::zero());
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
      shift[i - 1] = p.coeffs[i] * FieldElem::from_int(static_cast<long long>(i)) * dtheta;
    out = poly_add(out, Poly<FieldElem>(std::move(shift)));
  } else {
    std::vector<FieldElem> same(p.coeffs.size(), FieldElem::zero());
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
      same[i] = p.coeffs[i] * FieldElem::from_int(static_cast<long long>(i)) * du;
    out = poly_add(out, Poly<FieldElem>(std::move(same)));
  }
  return out;
}

/// The tower derivation D.
inline FieldElem derive(const FieldElem& e, const Tower& t) {
  if (e.level() == 0) {
    const RatFunc<Rational>& v = e.base();
    return FieldElem(ratfunc_derivative(v));
  }
  const RatFunc<FieldElem>& v = e.up();
  int lv = e.level();
  Poly<FieldElem> dn = poly_tower_derivative(v.num, t, lv);
  Poly<FieldElem> dd = poly_tower_derivative(v.den, t, lv);
  RatFunc<FieldElem> r(poly_sub(poly_mul(dn, v.den), poly_mul(v.num, dd)),
                       poly_mul(v.den, v.den));
  return FieldElem::make(lv, std::move(r));
}

/// Re-normalizes an element. Construction already canonicalizes, so this is
/// idempotent by design; it exists as the explicit canonical-form entry point.
inline FieldElem canonicalize(const FieldElem& e) {
  if (e.level() == 0) {
    RatFunc<Rational> v = e.base();
    v.canonicalize();
    return FieldElem(std::move(v));
  }
  RatFunc<FieldElem> v = e.up();
  v.canonicalize();
  return FieldElem::make(e.level(), std::move(v));
}

inline bool is_constant(const FieldElem& e) { return e.is_rational_const(); }

/// Splits an element viewed in theta_level into (numerator, denominator)
/// polynomials with lower-level coefficients.
inline std::pair<Poly<FieldElem>, Poly<FieldElem>> elem_as_fraction(const FieldElem& e,
                                                                    int var_level) {
  if (var_level == 0) {
    if (e.level() != 0) throw std::logic_error("elem_as_fraction: level mismatch");
    const auto& v = e.base();
    Poly<FieldElem> num, den;
    for (const auto& c : v.num.coeffs) num.coeffs.push_back(FieldElem(c));
    for (const auto& c : v.den.coeffs) den.coeffs.push_back(FieldElem(c));
    num.trim();
    den.trim();
    return {std::move(num), std::move(den)};
  }
  RatFunc<FieldElem> v = e.as_ratfunc_at(var_level);
  return {v.num, v.den};
}

/// Assembles num/den in theta_level back into an element.
inline FieldElem elem_from_fraction(Poly<FieldElem> num, Poly<FieldElem> den,
                                    int var_level) {
  if (den.is_zero_poly()) throw std::domain_error("elem_from_fraction: zero denominator");
  if (var_level == 0) {
    auto lower = [](const Poly<FieldElem>& p) {
      Poly<Rational> out;
      for (const auto& c : p.coeffs) {
        auto r = c.as_rational();
        if (!r) throw std::logic_error("elem_from_fraction: non-constant base coefficient");
        out.coeffs.push_back(*r);
      }
      out.trim();
      return out;
    };
    return FieldElem(RatFunc<Rational>(lower(num), lower(den)));
  }
  return FieldElem::make(var_level, RatFunc<FieldElem>(std::move(num), std::move(den)));
}

}  // namespace integen
