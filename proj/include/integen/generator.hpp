#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "integen/risch.hpp"
#include "integen/towerexpr.hpp"

namespace integen {

enum class Method { Poly, Sqfree, Hermite, Mixed, Auto };
enum class ExtChoice { Log, Exp, Random };
enum class ArctanMode { Auto, On, Off };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Poly: return "poly";
    case Method::Sqfree: return "sqfree";
    case Method::Hermite: return "hermite";
    case Method::Mixed: return "mixed";
    default: return "auto";
  }
}

struct GenConfig {
  std::uint64_t seed = 0;
  Method method = Method::Auto;  // Auto: one third poly / rational / mixed
  ExtChoice extension = ExtChoice::Random;
  int tower_height = 1;
  int max_theta_degree = 4;
  int max_factor_count = 3;
  long long coeff_bound = 20;
  bool allow_negative_exp_powers = true;
  ArctanMode arctan = ArctanMode::Auto;

  void validate() const {
    if (tower_height < 1 || tower_height > 2)
      throw std::invalid_argument("tower height must be 1 or 2");
    if (max_theta_degree < 1) throw std::invalid_argument("max theta degree must be positive");
    if (max_factor_count < 1) throw std::invalid_argument("max factor count must be positive");
    if (coeff_bound < 1 || coeff_bound > 20)
      throw std::invalid_argument("coefficient bound must be in [1, 20]");
    if (arctan == ArctanMode::On && extension != ExtChoice::Log)
      throw std::invalid_argument("arctan factors require logarithmic extensions");
  }
};

struct IntegrablePair {
  ExprPtr integrand;
  ExprPtr integral;
  FieldElem integrand_elem;
  LiouvilleForm integral_form;
  Tower tower;
  Method method = Method::Poly;
  std::uint64_t item_seed = 0;
  bool verified = false;
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Item seeds are a hash of (master seed, index): batch output is independent
/// of scheduling.
inline std::uint64_t item_seed_for(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

/// Deterministic per-item randomness (mt19937_64 is bit-stable across
/// platforms; distributions here are hand-rolled for the same reason).
class ItemRng {
 public:
  explicit ItemRng(std::uint64_t seed) : eng_(seed) {}

  long long uniform(long long lo, long long hi) {
    std::uint64_t n = static_cast<std::uint64_t>(hi - lo + 1);
    std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return lo + static_cast<long long>(v % n);
  }

  bool coin() { return uniform(0, 1) == 1; }
  bool chance(int pct) { return uniform(1, 100) <= pct; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long long>(v.size()) - 1))];
  }

  Rational rational(long long bound, long long den_max = 3) {
    return Rational(uniform(-bound, bound), uniform(1, den_max));
  }

  Rational nonzero_rational(long long bound, long long den_max = 3) {
    Rational r = rational(bound, den_max);
    while (r.is_zero()) r = rational(bound, den_max);
    return r;
  }

 private:
  std::mt19937_64 eng_;
};

namespace genpool {

/// Extension-argument pool: dependency-free by construction for the rules
/// below (x, 1/x, x +- k, x^2 + k, k x).
struct ArgChoice {
  FieldElem elem;
  int family;  // 0: x / 1/x / kx, 1: x +- k, 2: x^2 + k
};

struct ArgPools {
  std::vector<ArgChoice> affine;     // x +- k
  std::vector<ArgChoice> multiple;   // k x, negative multiples exp-only
  std::vector<ArgChoice> reciprocal; // 1/x
  std::vector<ArgChoice> quadratic;  // x^2 +- k
  ArgChoice var_x{FieldElem::var_x(), 0};
};

inline const ArgPools& extension_arg_pools() {
  static const ArgPools pools = [] {
    ArgPools p;
    FieldElem x = FieldElem::var_x();
    for (int k = 1; k <= 5; ++k) {
      p.affine.push_back({x + FieldElem::from_int(k), 1});
      p.affine.push_back({x - FieldElem::from_int(k), 1});
    }
    for (int k = 2; k <= 5; ++k) p.multiple.push_back({FieldElem::from_int(k) * x, 0});
    p.reciprocal.push_back({FieldElem::one() / x, 0});
    for (int k = 1; k <= 5; ++k) p.quadratic.push_back({x * x + FieldElem::from_int(k), 2});
    for (int k = 1; k <= 3; ++k) p.quadratic.push_back({x * x - FieldElem::from_int(k), 2});
    return p;
  }();
  return pools;
}

/// Weighted argument draw: every theta occurrence spells the argument out, so
/// short arguments keep integrand/integral lengths close.
inline const ArgChoice& pick_arg(ExtKind kind, ItemRng& rng) {
  (void)kind;
  const ArgPools& p = extension_arg_pools();
  int roll = static_cast<int>(rng.uniform(1, 100));
  if (roll <= 44) return p.var_x;
  if (roll <= 68) return rng.pick(p.affine);
  if (roll <= 81) return rng.pick(p.multiple);
  if (roll <= 85) return p.reciprocal[0];
  return rng.pick(p.quadratic);
}

/// Visible algebraic dependence between same-kind extension arguments.
inline bool args_dependent(ExtKind kind, const FieldElem& u1, const FieldElem& u2) {
  if (u1 == u2) return true;
  if (kind == ExtKind::Log) {
    // log u2 = c log u1 + const when u2/u1 or u2*u1 is constant
    return (u2 / u1).is_rational_const() || (u2 * u1).is_rational_const();
  }
  // exp: dependent when u2 - u1 or u2/u1 is constant
  return (u2 - u1).is_rational_const() || (u2 / u1).is_rational_const();
}

}  // namespace genpool

inline Tower random_tower(const GenConfig& cfg, ItemRng& rng) {
  Tower t;
  std::vector<std::pair<ExtKind, FieldElem>> chosen;
  for (int lv = 1; lv <= cfg.tower_height; ++lv) {
    ExtKind kind;
    switch (cfg.extension) {
      case ExtChoice::Log: kind = ExtKind::Log; break;
      case ExtChoice::Exp: kind = ExtKind::Exp; break;
      default: kind = rng.coin() ? ExtKind::Log : ExtKind::Exp; break;
    }
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100) throw std::runtime_error("random_tower: argument pool exhausted");
      const genpool::ArgChoice& cand = genpool::pick_arg(kind, rng);
      bool bad = false;
      for (const auto& [k2, u2] : chosen)
        if (k2 == kind && genpool::args_dependent(kind, u2, cand.elem)) bad = true;
      if (bad) continue;
      t.push(kind, cand.elem);
      chosen.emplace_back(kind, cand.elem);
      break;
    }
  }
  return t;
}

/// Random element of F_(level): a short sum of c * x^e monomials, optionally
/// carrying a first-extension factor when the tower is tall enough.
inline FieldElem random_lower_elem(ItemRng& rng, const Tower& t, int level,
                                   long long bound, bool allow_zero = true) {
  FieldElem x = FieldElem::var_x();
  for (int attempt = 0; attempt < 50; ++attempt) {
    FieldElem acc = FieldElem::zero();
    if (rng.chance(52)) {
      acc = FieldElem(rng.nonzero_rational(bound, 2));  // plain constant
    } else {
      int terms = rng.chance(70) ? 1 : 2;
      for (int i = 0; i < terms; ++i) {
        FieldElem m = FieldElem(rng.nonzero_rational(bound, 2));
        int e = rng.chance(55) ? 1 : (rng.chance(60) ? -1 : 0);
        if (rng.chance(8)) e *= 2;
        m = m * x.pow(e);
        if (level >= 1 && rng.chance(30)) m = m * t.theta(level);
        acc = acc + m;
      }
    }
    if (allow_zero || !acc.is_zero_val()) return acc;
  }
  throw std::runtime_error("random_lower_elem: resampling bound exceeded");
}

/// One planted square-free denominator factor with its residues: a log
/// residue c, and for theta^2 + r^2 factors an arctan coefficient as well.
struct FactorSpec {
  FPoly factor;  // monic in the top variable
  int multiplicity = 1;
  Rational log_residue;  // 0 when absent
  Rational atan_coeff;   // 0 when absent; only for theta^2 + r^2 factors
  Rational atan_radius;  // r of theta^2 + r^2
};

struct DenominatorDraw {
  std::vector<FactorSpec> factors;
  FPoly b;  // expanded product with multiplicities
};

/// Draws the square-free factorization shape of a denominator: distinct monic
/// linear factors theta + p, plus theta^2 + r^2 (arctan towers) or irreducible
/// theta^2 + p theta + q quadratics. Never the bare theta for exp towers.
inline DenominatorDraw random_denominator(const GenConfig& cfg, ItemRng& rng,
                                          const Tower& t, bool arctan_ok) {
  int var_level = t.height();
  bool exp_top = t.ext(var_level).kind == ExtKind::Exp;
  FieldElem x = FieldElem::var_x();

  std::vector<FieldElem> shift_pool;
  if (!exp_top) shift_pool.push_back(FieldElem::zero());
  for (int k = 1; k <= 5; ++k) {
    shift_pool.push_back(FieldElem::from_int(k));
    shift_pool.push_back(FieldElem::from_int(-k));
  }
  for (int k = 1; k <= 3; ++k) {
    shift_pool.push_back(FieldElem::from_int(k) * x);
    shift_pool.push_back(FieldElem::from_int(-k) * x);
    shift_pool.push_back(x + FieldElem::from_int(k));
    shift_pool.push_back(x - FieldElem::from_int(k));
  }
  static const std::vector<Rational> radius_pool{Rational(1), Rational(2), Rational(3),
                                                 Rational(1, 2), Rational(3, 2)};
  static const std::vector<std::pair<int, int>> irquad_pool{
      {0, 2}, {2, 2}, {-2, 3}, {1, 1}, {0, 3}, {-1, 1}};

  DenominatorDraw out;
  std::vector<FieldElem> used_shifts;
  std::vector<Rational> used_radii;
  std::vector<std::pair<int, int>> used_quads;
  int budget = cfg.max_theta_degree;
  // weighted low: short denominators keep integrand/integral lengths close
  int roll = static_cast<int>(rng.uniform(1, 100));
  int count = roll <= 65 ? 1 : (roll <= 92 ? 2 : 3);
  count = std::min(count, cfg.max_factor_count);
  for (int i = 0; i < count && budget >= 1; ++i) {
    bool quad = budget >= 2 && rng.chance(20);
    FactorSpec spec;
    if (!quad) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 100) throw std::runtime_error("random_denominator: pool exhausted");
        // integer shifts are a token each; weight them up
        FieldElem p = rng.chance(75)
                          ? shift_pool[static_cast<std::size_t>(
                                rng.uniform(0, std::min<long long>(10, shift_pool.size() - 1)))]
                          : rng.pick(shift_pool);
        bool dup = false;
        for (const auto& u : used_shifts) dup |= u == p;
        if (dup) continue;
        used_shifts.push_back(p);
        spec.factor = FPoly{p, FieldElem::one()};
        break;
      }
      spec.log_residue = rng.chance(80) ? Rational(rng.uniform(1, 6) * (rng.coin() ? 1 : -1))
                                        : rng.nonzero_rational(6, 2);
      budget -= 1;
    } else if (arctan_ok) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 100) throw std::runtime_error("random_denominator: pool exhausted");
        Rational r = rng.pick(radius_pool);
        bool dup = false;
        for (const auto& u : used_radii) dup |= u == r;
        if (dup) continue;
        used_radii.push_back(r);
        spec.factor = FPoly{FieldElem(r * r), FieldElem::zero(), FieldElem::one()};
        spec.atan_radius = r;
        break;
      }
      spec.log_residue = rng.rational(4, 2);
      spec.atan_coeff = rng.rational(4, 2);
      if (spec.log_residue.is_zero() && spec.atan_coeff.is_zero())
        spec.atan_coeff = Rational(1);
      budget -= 2;
    } else {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 100) throw std::runtime_error("random_denominator: pool exhausted");
        std::pair<int, int> pq = rng.pick(irquad_pool);
        bool dup = false;
        for (const auto& u : used_quads) dup |= u == pq;
        if (dup) continue;
        used_quads.push_back(pq);
        spec.factor = FPoly{FieldElem::from_int(pq.second), FieldElem::from_int(pq.first),
                            FieldElem::one()};
        break;
      }
      spec.log_residue = rng.nonzero_rational(6, 2);
      budget -= 2;
    }
    out.factors.push_back(std::move(spec));
  }
  out.b = FPoly{FieldElem::one()};
  for (const auto& f : out.factors) out.b = poly_mul(out.b, poly_pow(f.factor, f.multiplicity));
  return out;
}

namespace detail {

/// Builds the antiderivative the planted residues describe.
inline LiouvilleForm planted_form(const std::vector<FactorSpec>& factors, const Tower& t,
                                  int var_level) {
  LiouvilleForm form;
  FieldElem var = level_var_elem(t, var_level);
  for (const auto& f : factors) {
    FieldElem f_elem = elem_from_fraction(f.factor, FPoly{FieldElem::one()}, var_level);
    if (!f.log_residue.is_zero()) form.logs.emplace_back(f.log_residue, f_elem);
    if (!f.atan_coeff.is_zero())
      form.arctans.emplace_back(f.atan_coeff, var / FieldElem(f.atan_radius));
  }
  return form;
}

/// Derives the integral form once, term by term: the integrand element is the
/// canonical sum, the verified flag re-checks the residual, and the integrand
/// expression keeps the per-term shape (one summand per rational part, log,
/// and arctan term) the way such integrands are usually presented.
inline void finish_pair(IntegrablePair& pair, const Tower& t) {
  pair.tower = t;
  const LiouvilleForm& form = pair.integral_form;
  std::vector<FieldElem> pieces;
  if (!form.v0.is_zero_val()) pieces.push_back(derive(form.v0, t));
  for (const auto& [c, v] : form.logs)
    pieces.push_back(FieldElem(c) * derive(v, t) / v);
  for (const auto& [c, w] : form.arctans)
    pieces.push_back(FieldElem(c) * derive(w, t) / (FieldElem::one() + w * w));

  FieldElem total = FieldElem::zero();
  std::vector<ExprPtr> terms;
  const int top = t.height();
  for (const auto& piece : pieces) {
    if (piece.is_zero_val()) continue;
    total = total + piece;
    // polynomial part and proper fraction render separately (shorter for
    // exponential towers, identical value)
    if (top >= 1 && piece.level() == top) {
      auto [num, den] = elem_as_fraction(piece, top);
      auto [pp, rem] = poly_divmod(num, den);
      if (!pp.is_zero_poly() && !rem.is_zero_poly()) {
        terms.push_back(to_expr(elem_from_fraction(pp, FPoly{FieldElem::one()}, top), t));
        terms.push_back(to_expr(elem_from_fraction(rem, den, top), t));
        continue;
      }
    }
    terms.push_back(to_expr(piece, t));
  }
  pair.integrand_elem = canonicalize(total);
  pair.verified = (total - pair.integrand_elem).is_zero_val();
  pair.integrand = fold_terms(terms);
  pair.integral = to_expr(form, t);
}

/// Splits an element viewed at var_level into its polynomial part and proper
/// fraction (num, den).
inline std::tuple<FPoly, FPoly, FPoly> split_proper(const FieldElem& e, int var_level) {
  auto [num, den] = elem_as_fraction(e, var_level);
  auto [pp, rem] = poly_divmod(num, den);
  return {std::move(pp), std::move(rem), std::move(den)};
}

}  // namespace detail

/// Backward generation of the polynomial part: P = sum q_i theta^i from given
/// coefficients (negative i allowed for exponential towers); the pair is
/// (D(P), P).
inline IntegrablePair make_poly_pair(const Tower& t,
                                     const std::vector<std::pair<int, FieldElem>>& coeffs) {
  int top = t.height();
  if (top < 1) throw std::invalid_argument("make_poly_pair: tower must have an extension");
  FieldElem theta = t.theta(top);
  FieldElem p = FieldElem::zero();
  for (const auto& [pw, c] : coeffs) {
    if (pw < 0 && t.ext(top).kind != ExtKind::Exp)
      throw std::invalid_argument("make_poly_pair: negative powers need an exp tower");
    p = p + c * theta.pow(pw);
  }
  IntegrablePair pair;
  pair.method = Method::Poly;
  pair.integral_form.v0 = p;
  detail::finish_pair(pair, t);
  return pair;
}

/// Square-free rational pair from planted constant residues; the TR criterion
/// holds by construction and is re-checked.
inline IntegrablePair make_sqfree_pair(const Tower& t, const std::vector<FactorSpec>& factors) {
  int var_level = t.height();
  IntegrablePair pair;
  pair.method = Method::Sqfree;
  pair.integral_form = detail::planted_form(factors, t, var_level);
  detail::finish_pair(pair, t);

  auto [pp, rem, den] = detail::split_proper(pair.integrand_elem, var_level);
  if (!rem.is_zero_poly()) {
    TRResultant rr = tr_resultant(rem, den, t, var_level);
    if (!constant_coefficient_check(rr))
      throw std::logic_error("make_sqfree_pair: TR criterion failed on generated data");
  }
  return pair;
}

/// Non-square-free rational pair: integral s/h + planted log/arctan terms with
/// h the deflation of the denominator; cross-verified by running Hermite
/// reduction and forward Rothstein-Trager on the integrand.
inline IntegrablePair make_hermite_pair(const Tower& t, const std::vector<FactorSpec>& factors,
                                        const FPoly& s) {
  int var_level = t.height();
  FPoly h{FieldElem::one()};
  bool multiple = false;
  for (const auto& f : factors) {
    multiple |= f.multiplicity > 1;
    h = poly_mul(h, poly_pow(f.factor, f.multiplicity - 1));
  }
  if (!multiple)
    throw std::invalid_argument("make_hermite_pair: needs a multiplicity >= 2 factor");
  if (!s.is_zero_poly() && s.degree() >= h.degree())
    throw std::invalid_argument("make_hermite_pair: numerator must be proper over deflation");
  if (!s.is_zero_poly() && poly_gcd(s, h).degree() > 0)
    throw std::invalid_argument("make_hermite_pair: gcd(s, h) != 1");

  IntegrablePair pair;
  pair.method = Method::Hermite;
  pair.integral_form = detail::planted_form(factors, t, var_level);
  if (!s.is_zero_poly())
    pair.integral_form.v0 = elem_from_fraction(s, h, var_level);
  detail::finish_pair(pair, t);

  // forward route must reproduce the derivative of the proper part exactly;
  // a residue split outside the supported families leaves the pair verified
  // by the derivative check alone
  auto [pp, rem, den] = detail::split_proper(pair.integrand_elem, var_level);
  if (!rem.is_zero_poly()) {
    TrResult forward = integrate_rational(rem, den, t, var_level);
    if (forward.status == TrStatus::NotElementary)
      throw std::logic_error("make_hermite_pair: forward integration failed: " +
                             forward.detail);
    if (forward.ok()) {
      FieldElem proper = elem_from_fraction(rem, den, var_level);
      if (!(derive(forward.form, t) - proper).is_zero_val())
        throw std::logic_error("make_hermite_pair: forward verification mismatch");
    }
  }
  return pair;
}

/// Sum of a polynomial-part pair and a rational pair over the same tower.
inline IntegrablePair make_mixed_pair(const IntegrablePair& a, const IntegrablePair& b,
                                      const Tower& t) {
  IntegrablePair pair;
  pair.method = Method::Mixed;
  pair.tower = t;
  pair.integral_form = a.integral_form;
  pair.integral_form += b.integral_form;
  // D is additive, so the sum pair inherits verification from its parts;
  // both expressions stay sums of the parts' expressions
  pair.integrand_elem = canonicalize(a.integrand_elem + b.integrand_elem);
  pair.verified = a.verified && b.verified;
  pair.integrand = fold_terms({a.integrand, b.integrand});
  pair.integral = fold_terms({a.integral, b.integral});
  return pair;
}

inline IntegrablePair gen_poly_pair(const GenConfig& cfg, ItemRng& rng, const Tower& t) {
  int top = t.height();
  bool exp_top = t.ext(top).kind == ExtKind::Exp;
  for (int attempt = 0; attempt < 100; ++attempt) {
    int roll = static_cast<int>(rng.uniform(1, 100));
    int m = roll <= 60 ? 1 : (roll <= 88 ? 2 : (roll <= 97 ? 3 : cfg.max_theta_degree));
    m = std::min(m, cfg.max_theta_degree);
    int low = exp_top && cfg.allow_negative_exp_powers && rng.chance(40)
                  ? -static_cast<int>(rng.uniform(1, 2))
                  : 0;
    std::vector<std::pair<int, FieldElem>> coeffs;
    for (int i = low; i <= m; ++i) {
      if (i != m && rng.chance(i == 0 ? 40 : 35)) continue;  // sparse fills
      coeffs.emplace_back(i, random_lower_elem(rng, t, top - 1, cfg.coeff_bound));
    }
    IntegrablePair pair = make_poly_pair(t, coeffs);
    if (pair.integrand_elem.is_zero_val()) continue;
    return pair;
  }
  throw std::runtime_error("gen_poly_pair: resampling bound exceeded");
}

inline IntegrablePair gen_sqfree_pair(const GenConfig& cfg, ItemRng& rng, const Tower& t,
                                      bool arctan_ok) {
  DenominatorDraw d = random_denominator(cfg, rng, t, arctan_ok);
  return make_sqfree_pair(t, d.factors);
}

inline IntegrablePair gen_hermite_pair(const GenConfig& cfg, ItemRng& rng, const Tower& t,
                                       bool arctan_ok) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    DenominatorDraw d = random_denominator(cfg, rng, t, arctan_ok);
    if (d.factors.size() > 2) d.factors.resize(2);
    // raise one linear factor's multiplicity, keeping the expanded degree
    // modest; quadratic deflations blow the rational term up
    std::size_t idx = d.factors.size();
    for (std::size_t j = 0; j < d.factors.size(); ++j)
      if (d.factors[j].factor.degree() == 1) idx = j;
    if (idx == d.factors.size()) continue;
    int mult = rng.chance(80) ? 2 : 3;
    int total = 0;
    for (const auto& f : d.factors) total += f.factor.degree();
    while (mult > 2 &&
           total + (mult - 1) * d.factors[idx].factor.degree() > cfg.max_theta_degree + 1)
      --mult;
    while (d.factors.size() > 1 && d.factors.size() - 1 != idx &&
           total + (mult - 1) * d.factors[idx].factor.degree() > cfg.max_theta_degree + 1) {
      total -= d.factors.back().factor.degree();
      d.factors.pop_back();
    }
    d.factors[idx].multiplicity = mult;

    FPoly h{FieldElem::one()};
    for (const auto& f : d.factors)
      h = poly_mul(h, poly_pow(f.factor, f.multiplicity - 1));
    std::vector<FieldElem> sc;
    for (int i = 0; i < h.degree(); ++i) {
      int keep = i == 0 ? 80 : 40;  // mostly constant numerators
      if (!rng.chance(keep)) {
        sc.push_back(FieldElem::zero());
      } else if (rng.chance(80)) {
        sc.push_back(FieldElem(rng.nonzero_rational(cfg.coeff_bound, 2)));
      } else {
        sc.push_back(random_lower_elem(rng, t, t.height() - 1, cfg.coeff_bound));
      }
    }
    FPoly s(std::move(sc));
    if (!s.is_zero_poly() && poly_gcd(s, h).degree() > 0) continue;
    bool any_residue = !s.is_zero_poly();
    for (const auto& f : d.factors)
      any_residue |= !f.log_residue.is_zero() || !f.atan_coeff.is_zero();
    if (!any_residue) continue;
    return make_hermite_pair(t, d.factors, s);
  }
  throw std::runtime_error("gen_hermite_pair: resampling bound exceeded");
}

inline bool arctan_enabled(const GenConfig& cfg, const Tower& t) {
  if (t.ext(t.height()).kind != ExtKind::Log) return false;
  return cfg.arctan != ArctanMode::Off;
}

/// Polynomial summand used inside mixed pairs: mostly constant coefficients
/// at degree 2-3. Differentiation shortens such parts slightly, offsetting
/// the rational summand's slightly longer derivative.
inline IntegrablePair gen_poly_pair_for_mixed(const GenConfig& cfg, ItemRng& rng,
                                              const Tower& t) {
  int top = t.height();
  bool exp_top = t.ext(top).kind == ExtKind::Exp;
  for (int attempt = 0; attempt < 100; ++attempt) {
    int roll = static_cast<int>(rng.uniform(1, 100));
    int m = roll <= 20 ? 1 : (roll <= 65 ? 2 : 3);
    m = std::min(m, cfg.max_theta_degree);
    int low = exp_top && cfg.allow_negative_exp_powers && rng.chance(50)
                  ? -static_cast<int>(rng.uniform(1, 2))
                  : 0;
    std::vector<std::pair<int, FieldElem>> coeffs;
    for (int i = low; i <= m; ++i) {
      if (i != m && rng.chance(30)) continue;
      int kind = static_cast<int>(rng.uniform(1, 100));
      FieldElem c;
      if (kind <= (exp_top ? 70 : 50)) {
        c = FieldElem(rng.nonzero_rational(cfg.coeff_bound, 2));
      } else if (!exp_top && kind <= 82) {
        // c u for theta = log(u): the u cancels against D(theta) = u'/u, so
        // the summand stays balanced while the shape stays distinct
        c = FieldElem(rng.nonzero_rational(cfg.coeff_bound, 2)) * t.ext(top).arg;
      } else {
        c = random_lower_elem(rng, t, top - 1, cfg.coeff_bound);
      }
      coeffs.emplace_back(i, c);
    }
    IntegrablePair pair = make_poly_pair(t, coeffs);
    if (pair.integrand_elem.is_zero_val()) continue;
    return pair;
  }
  throw std::runtime_error("gen_poly_pair_for_mixed: resampling bound exceeded");
}

inline IntegrablePair gen_mixed_pair(const GenConfig& cfg, ItemRng& rng, const Tower& t) {
  GenConfig part = cfg;  // keep the two summands balanced
  part.max_theta_degree = std::min(cfg.max_theta_degree, 2);
  part.max_factor_count = std::min(cfg.max_factor_count, rng.chance(85) ? 1 : 2);
  IntegrablePair poly = gen_poly_pair_for_mixed(part, rng, t);
  bool arctan_ok = arctan_enabled(cfg, t);
  IntegrablePair rat = rng.coin() ? gen_hermite_pair(part, rng, t, arctan_ok)
                                  : gen_sqfree_pair(part, rng, t, arctan_ok);
  // summand order is part of the draw
  if (rng.coin()) return make_mixed_pair(rat, poly, t);
  return make_mixed_pair(poly, rat, t);
}

/// One deterministic item: the method mix for Auto is one third polynomial,
/// one third rational, one third mixed, by index.
inline IntegrablePair generate_one(const GenConfig& cfg, std::uint64_t index) {
  std::uint64_t seed = item_seed_for(cfg.seed, index);
  ItemRng rng(seed);
  Tower t = random_tower(cfg, rng);
  Method m = cfg.method;
  if (m == Method::Auto) {
    switch (index % 3) {
      case 0: m = Method::Poly; break;
      case 1: m = rng.coin() ? Method::Sqfree : Method::Hermite; break;
      default: m = Method::Mixed; break;
    }
  }
  IntegrablePair pair;
  bool arctan_ok = arctan_enabled(cfg, t);
  switch (m) {
    case Method::Poly: pair = gen_poly_pair(cfg, rng, t); break;
    case Method::Sqfree: pair = gen_sqfree_pair(cfg, rng, t, arctan_ok); break;
    case Method::Hermite: pair = gen_hermite_pair(cfg, rng, t, arctan_ok); break;
    default: pair = gen_mixed_pair(cfg, rng, t); break;
  }
  pair.item_seed = seed;
  return pair;
}

/// Deterministic batch: output order is by index regardless of thread count.
inline std::vector<IntegrablePair> generate_batch(const GenConfig& cfg, std::size_t count,
                                                  int threads = 1) {
  cfg.validate();
  std::vector<IntegrablePair> out(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = generate_one(cfg, i);
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t per = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    std::size_t lo = per * w;
    std::size_t hi = std::min(count, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&cfg, &out, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = generate_one(cfg, i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace integen
