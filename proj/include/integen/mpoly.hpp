#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "integen/poly.hpp"
#include "integen/rational.hpp"

namespace integen {

/// Recursive dense multivariate polynomial over Q: level 0 is a polynomial in
/// x, level k >= 1 a polynomial in t_k whose coefficients sit at lower levels.
/// Values are stored at the lowest level that represents them.
///
/// This type is the gcd engine behind the fraction types: reductions clear
/// denominators and run a subresultant PRS with content removal here, which
/// keeps intermediate coefficients near-minimal where a fraction-field Euclid
/// blows up.
class MPoly {
 public:
  MPoly() : level_(0) {}

  static MPoly from_rational(Rational r) {
    MPoly m;
    if (!r.is_zero()) m.base_.push_back(std::move(r));
    return m;
  }
  static MPoly one() { return from_rational(Rational(1)); }

  static MPoly base_poly(std::vector<Rational> coeffs) {
    MPoly m;
    m.base_ = std::move(coeffs);
    while (!m.base_.empty() && m.base_.back().is_zero()) m.base_.pop_back();
    return m;
  }

  /// Polynomial in the level-L variable; compresses degree-0 values downward.
  static MPoly make(int level, std::vector<MPoly> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero_val()) coeffs.pop_back();
    if (coeffs.empty()) return MPoly();
    if (level == 0) {
      std::vector<Rational> base;
      base.reserve(coeffs.size());
      for (auto& c : coeffs) {
        if (c.level_ != 0 || c.base_.size() > 1)
          throw std::logic_error("MPoly::make: level-0 coefficients must be rational");
        base.push_back(c.base_.empty() ? Rational(0) : c.base_[0]);
      }
      return base_poly(std::move(base));
    }
    if (coeffs.size() == 1) return std::move(coeffs[0]);
    for (const auto& c : coeffs)
      if (c.level_ >= level) throw std::logic_error("MPoly::make: coefficient level too high");
    MPoly m;
    m.level_ = level;
    m.up_ = std::move(coeffs);
    return m;
  }

  int level() const { return level_; }
  bool is_zero_val() const { return level_ == 0 && base_.empty(); }

  bool is_rational() const { return level_ == 0 && base_.size() <= 1; }
  Rational as_rational() const {
    if (!is_rational()) throw std::logic_error("MPoly: not a rational constant");
    return base_.empty() ? Rational(0) : base_[0];
  }

  /// Coefficient list viewed as a polynomial in the level-L variable.
  std::vector<MPoly> coeffs_at(int L) const {
    if (level_ > L) throw std::logic_error("MPoly: cannot view below own level");
    if (level_ < L || L == 0) {
      if (L == 0 && level_ == 0) {
        std::vector<MPoly> out;
        out.reserve(base_.size());
        for (const auto& r : base_) out.push_back(from_rational(r));
        return out;
      }
      return {*this};
    }
    return up_;
  }

  int degree_at(int L) const {
    if (is_zero_val()) return -1;
    if (level_ < L) return 0;
    return static_cast<int>((L == 0 ? base_.size() : up_.size())) - 1;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.level_ == b.level_ && a.base_ == b.base_ && a.up_ == b.up_;
  }

 private:
  int level_;
  std::vector<Rational> base_;  // level 0
  std::vector<MPoly> up_;       // level >= 1
};

inline MPoly m_add(const MPoly& a, const MPoly& b);
inline MPoly m_mul(const MPoly& a, const MPoly& b);

inline MPoly m_neg(const MPoly& a) {
  int L = a.level();
  std::vector<MPoly> c = a.coeffs_at(L);
  for (auto& x : c) {
    if (x.level() == 0 && x.is_rational())
      x = MPoly::from_rational(-x.as_rational());
    else
      x = m_neg(x);
  }
  if (L == 0) {
    std::vector<Rational> base;
    for (auto& x : c) base.push_back(x.as_rational());
    return MPoly::base_poly(std::move(base));
  }
  return MPoly::make(L, std::move(c));
}

inline MPoly m_add(const MPoly& a, const MPoly& b) {
  if (a.is_zero_val()) return b;
  if (b.is_zero_val()) return a;
  int L = std::max(a.level(), b.level());
  std::vector<MPoly> ca = a.coeffs_at(L);
  std::vector<MPoly> cb = b.coeffs_at(L);
  if (L == 0) {
    std::vector<Rational> base(std::max(ca.size(), cb.size()), Rational(0));
    for (std::size_t i = 0; i < ca.size(); ++i) base[i] += ca[i].as_rational();
    for (std::size_t i = 0; i < cb.size(); ++i) base[i] += cb[i].as_rational();
    return MPoly::base_poly(std::move(base));
  }
  std::vector<MPoly> out(std::max(ca.size(), cb.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < ca.size() && i < cb.size())
      out[i] = m_add(ca[i], cb[i]);
    else
      out[i] = i < ca.size() ? ca[i] : cb[i];
  }
  return MPoly::make(L, std::move(out));
}

inline MPoly m_sub(const MPoly& a, const MPoly& b) { return m_add(a, m_neg(b)); }

inline MPoly m_mul(const MPoly& a, const MPoly& b) {
  if (a.is_zero_val() || b.is_zero_val()) return MPoly();
  int L = std::max(a.level(), b.level());
  std::vector<MPoly> ca = a.coeffs_at(L);
  std::vector<MPoly> cb = b.coeffs_at(L);
  if (L == 0) {
    std::vector<Rational> base(ca.size() + cb.size() - 1, Rational(0));
    for (std::size_t i = 0; i < ca.size(); ++i) {
      Rational ra = ca[i].as_rational();
      if (ra.is_zero()) continue;
      for (std::size_t j = 0; j < cb.size(); ++j) base[i + j] += ra * cb[j].as_rational();
    }
    return MPoly::base_poly(std::move(base));
  }
  std::vector<MPoly> out(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].is_zero_val()) continue;
    for (std::size_t j = 0; j < cb.size(); ++j)
      out[i + j] = m_add(out[i + j], m_mul(ca[i], cb[j]));
  }
  return MPoly::make(L, std::move(out));
}

inline MPoly m_scale(const MPoly& a, const Rational& r) {
  if (r.is_zero() || a.is_zero_val()) return MPoly();
  return m_mul(a, MPoly::from_rational(r));
}

inline MPoly m_pow(const MPoly& a, int e) {
  MPoly acc = MPoly::one();
  for (int i = 0; i < e; ++i) acc = m_mul(acc, a);
  return acc;
}

/// Exact division; throws logic_error when the division leaves a remainder.
inline MPoly m_exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero_val()) throw std::domain_error("MPoly: division by zero");
  if (a.is_zero_val()) return MPoly();
  if (b.is_rational()) return m_scale(a, b.as_rational().inverse());
  if (a.level() < b.level()) throw std::logic_error("MPoly: non-exact division (level)");
  int L = std::max(a.level(), b.level());
  if (b.level() < L) {
    // divide coefficient-wise
    std::vector<MPoly> c = a.coeffs_at(L);
    for (auto& x : c) x = m_exact_div(x, b);
    return MPoly::make(L, std::move(c));
  }
  // synthetic division in the level-L variable
  std::vector<MPoly> rem = a.coeffs_at(L);
  std::vector<MPoly> cb = b.coeffs_at(L);
  int db = static_cast<int>(cb.size()) - 1;
  if (static_cast<int>(rem.size()) - 1 < db)
    throw std::logic_error("MPoly: non-exact division (degree)");
  std::vector<MPoly> q(rem.size() - cb.size() + 1);
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    if (rem[i].is_zero_val()) continue;
    MPoly f = m_exact_div(rem[i], cb[db]);
    for (int j = 0; j < db; ++j)
      rem[i - db + j] = m_sub(rem[i - db + j], m_mul(f, cb[j]));
    rem[i] = MPoly();
    q[i - db] = std::move(f);
  }
  for (const auto& r : rem)
    if (!r.is_zero_val()) throw std::logic_error("MPoly: non-exact division (remainder)");
  return MPoly::make(L, std::move(q));
}

/// Rational content: the positive-gcd-over-lcm unit that makes the polynomial
/// integer-coefficient, coprime, with a positive leading unit; carries the
/// sign of the leading coefficient.
inline Rational m_rational_content(const MPoly& a) {
  if (a.is_zero_val()) return Rational(1);
  if (a.is_rational()) return a.as_rational();
  int L = a.level();
  BigInt num_gcd(0), den_lcm(1);
  int lead_sign = 1;
  for (const auto& c : a.coeffs_at(L)) {
    if (c.is_zero_val()) continue;
    Rational rc = m_rational_content(c);
    num_gcd = BigInt::gcd(num_gcd, rc.num());
    den_lcm = den_lcm * (rc.den() / BigInt::gcd(den_lcm, rc.den()));
    lead_sign = rc.signum();  // ascending order: the last nonzero is the lead
  }
  Rational out(num_gcd, den_lcm);
  return lead_sign < 0 ? -out : out;
}

/// Scales away the rational content: integer-primitive with positive lead.
inline MPoly m_normalize_rational(const MPoly& a) {
  if (a.is_zero_val()) return a;
  return m_scale(a, m_rational_content(a).inverse());
}

MPoly m_gcd(const MPoly& a, const MPoly& b);

/// gcd of the coefficients viewed at level L, normalized.
inline MPoly m_content_at(const MPoly& a, int L) {
  MPoly acc;
  for (const auto& c : a.coeffs_at(L)) {
    if (c.is_zero_val()) continue;
    acc = acc.is_zero_val() ? m_normalize_rational(c) : m_gcd(acc, c);
    if (acc.is_rational()) return MPoly::one();
  }
  if (acc.is_zero_val()) throw std::logic_error("MPoly: content of zero");
  return acc;
}

/// Pseudo-remainder in the level-L variable: lc(b)^(da-db+1) * a mod b.
inline MPoly m_prem(const MPoly& a, const MPoly& b, int L) {
  std::vector<MPoly> r = a.coeffs_at(L);
  std::vector<MPoly> cb = b.coeffs_at(L);
  int db = static_cast<int>(cb.size()) - 1;
  const MPoly& lb = cb[db];
  int e = static_cast<int>(r.size()) - 1 - db + 1;
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    MPoly lr = r[dr];
    // r := lb * r - lr * t^(dr-db) * b
    std::vector<MPoly> nr(dr, MPoly());
    for (int i = 0; i < dr; ++i) {
      nr[i] = m_mul(lb, r[i]);
      int j = i - (dr - db);
      if (j >= 0 && j < db) nr[i] = m_sub(nr[i], m_mul(lr, cb[j]));
    }
    while (!nr.empty() && nr.back().is_zero_val()) nr.pop_back();
    r = std::move(nr);
    --e;
  }
  MPoly rem = MPoly::make(L, std::move(r));
  for (int i = 0; i < e; ++i) rem = m_mul(rem, lb);
  return rem;
}

namespace detail {

/// Subresultant PRS on content-free inputs; returns the primitive gcd in the
/// level-L variable (Knuth 4.6.1C / Brown-Traub).
inline MPoly m_subres_gcd(MPoly a, MPoly b, int L) {
  if (a.degree_at(L) < b.degree_at(L)) std::swap(a, b);
  MPoly g = MPoly::one(), h = MPoly::one();
  while (true) {
    int delta = a.degree_at(L) - b.degree_at(L);
    MPoly r = m_prem(a, b, L);
    if (r.is_zero_val()) break;
    if (r.degree_at(L) == 0) return MPoly::one();
    a = std::move(b);
    b = m_exact_div(r, m_mul(g, m_pow(h, delta)));
    g = a.coeffs_at(L).back();
    if (delta >= 1) h = m_exact_div(m_pow(g, delta), m_pow(h, delta - 1));
  }
  if (b.degree_at(L) == 0) return MPoly::one();
  return m_normalize_rational(m_exact_div(b, m_content_at(b, L)));
}

}  // namespace detail

/// gcd in Q[x, t1, ..., tn] up to a rational unit; the result is
/// integer-primitive with a positive leading unit.
inline MPoly m_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero_val() && b.is_zero_val()) throw std::domain_error("m_gcd: gcd(0, 0)");
  if (a.is_zero_val()) return m_normalize_rational(b);
  if (b.is_zero_val()) return m_normalize_rational(a);
  if (a.is_rational() || b.is_rational()) return MPoly::one();
  int L = std::max(a.level(), b.level());
  int da = a.degree_at(L), db = b.degree_at(L);
  if (da == 0) return m_gcd(a, m_content_at(b, L));
  if (db == 0) return m_gcd(m_content_at(a, L), b);
  MPoly ca = m_content_at(a, L);
  MPoly cb = m_content_at(b, L);
  MPoly pa = m_normalize_rational(m_exact_div(a, ca));
  MPoly pb = m_normalize_rational(m_exact_div(b, cb));
  MPoly c = m_gcd(ca, cb);
  MPoly gp = detail::m_subres_gcd(std::move(pa), std::move(pb), L);
  return m_normalize_rational(m_mul(c, gp));
}

/// Monic gcd of rational-coefficient polynomials through the
/// integer-primitive subresultant route.
inline Poly<Rational> poly_gcd(const Poly<Rational>& a, const Poly<Rational>& b) {
  if (a.is_zero_poly() && b.is_zero_poly())
    throw std::domain_error("poly_gcd: gcd(0, 0) undefined");
  if (a.is_zero_poly()) return poly_monic(b);
  if (b.is_zero_poly()) return poly_monic(a);
  if (a.degree() == 0 || b.degree() == 0) return Poly<Rational>{Rational(1)};
  MPoly g = m_gcd(MPoly::base_poly(a.coeffs), MPoly::base_poly(b.coeffs));
  if (g.is_rational()) return Poly<Rational>{Rational(1)};
  std::vector<Rational> out;
  for (const auto& c : g.coeffs_at(0)) out.push_back(c.as_rational());
  return poly_monic(Poly<Rational>(std::move(out)));
}

}  // namespace integen
