#pragma once

#include <stdexcept>
#include <utility>

#include "integen/mpoly.hpp"
#include "integen/poly.hpp"

namespace integen {

/// Rational function num/den over K[var], kept canonical: den monic,
/// gcd(num, den) = 1, zero is 0/1.
template <class K>
struct RatFunc {
  Poly<K> num;
  Poly<K> den;

  RatFunc() : num{}, den{} { den.coeffs.push_back(int_like(K{}, 1)); }

  RatFunc(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) { canonicalize(); }

  explicit RatFunc(Poly<K> n) : num(std::move(n)), den{} {
    K one = num.is_zero_poly() ? int_like(K{}, 1) : one_like(num.coeffs[0]);
    den.coeffs.push_back(std::move(one));
  }

  bool is_zero_val() const { return num.is_zero_poly(); }

  bool is_poly() const { return den.degree() == 0; }

  void canonicalize() {
    if (den.is_zero_poly()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero_poly()) {
      den = Poly<K>::constant(one_like(den.lc()));
      return;
    }
    // a constant on either side is already coprime to the other side
    if (den.degree() > 0 && num.degree() > 0) {
      Poly<K> g = poly_gcd(num, den);
      if (g.degree() > 0) {
        num = poly_div_exact(num, g);
        den = poly_div_exact(den, g);
      }
    }
    if (!is_zero(den.lc() - one_like(den.lc()))) {
      K inv = one_like(den.lc()) / den.lc();
      num = poly_scale(num, inv);
      den = poly_scale(den, inv);
    }
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                   poly_mul(a.den, b.den));
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_sub(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                   poly_mul(a.den, b.den));
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero_val()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = poly_neg(r.num);
    return r;
  }

  RatFunc inverse() const {
    if (is_zero_val()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den, num);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
};

template <class K>
bool is_zero(const RatFunc<K>& r) {
  return r.is_zero_val();
}

template <class K>
RatFunc<K> zero_like(const RatFunc<K>& r) {
  RatFunc<K> z;
  z.den = Poly<K>::constant(one_like(r.den.lc()));
  return z;
}

template <class K>
RatFunc<K> one_like(const RatFunc<K>& r) {
  K one = one_like(r.den.lc());
  RatFunc<K> z;
  z.num = Poly<K>::constant(one);
  z.den = Poly<K>::constant(one);
  return z;
}

template <class K>
RatFunc<K> int_like(const RatFunc<K>& r, long long v) {
  K one = one_like(r.den.lc());
  RatFunc<K> z;
  z.num = Poly<K>::constant(int_like(one, v));
  z.den = Poly<K>::constant(one);
  return z;
}

/// Derivative with respect to the fraction's own variable (quotient rule);
/// coefficients are treated as constants.
template <class K>
RatFunc<K> ratfunc_derivative(const RatFunc<K>& r) {
  Poly<K> dn = poly_derivative(r.num);
  Poly<K> dd = poly_derivative(r.den);
  return RatFunc<K>(poly_sub(poly_mul(dn, r.den), poly_mul(r.num, dd)),
                    poly_mul(r.den, r.den));
}

}  // namespace integen
