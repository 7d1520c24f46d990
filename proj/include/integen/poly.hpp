#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace integen {

/// Dense univariate polynomial over an abstract coefficient field K.
/// coeffs[i] is the coefficient of var^i; the leading coefficient of a nonzero
/// polynomial is nonzero, the zero polynomial is the empty list.
///
/// K must provide value semantics, operators + - * / and unary -, operator==,
/// and the ADL-found helpers is_zero(k), zero_like(k), one_like(k),
/// int_like(k, n).
template <class K>
struct Poly {
  std::vector<K> coeffs;

  Poly() = default;
  explicit Poly(std::vector<K> c) : coeffs(std::move(c)) { trim(); }
  Poly(std::initializer_list<K> c) : coeffs(c) { trim(); }

  static Poly constant(K k) {
    Poly p;
    if (!is_zero(k)) p.coeffs.push_back(std::move(k));
    return p;
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero_poly() const { return coeffs.empty(); }

  const K& lc() const {
    if (coeffs.empty()) throw std::domain_error("Poly: leading coefficient of zero");
    return coeffs.back();
  }

  void trim() {
    while (!coeffs.empty() && is_zero(coeffs.back())) coeffs.pop_back();
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs == b.coeffs; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

template <class K>
bool is_zero(const Poly<K>& p) {
  return p.coeffs.empty();
}

template <class K>
Poly<K> poly_add(const Poly<K>& a, const Poly<K>& b) {
  const auto& big = a.coeffs.size() >= b.coeffs.size() ? a : b;
  const auto& small = a.coeffs.size() >= b.coeffs.size() ? b : a;
  std::vector<K> r = big.coeffs;
  for (std::size_t i = 0; i < small.coeffs.size(); ++i) r[i] = r[i] + small.coeffs[i];
  return Poly<K>(std::move(r));
}

template <class K>
Poly<K> poly_neg(const Poly<K>& a) {
  std::vector<K> r = a.coeffs;
  for (auto& c : r) c = -c;
  return Poly<K>(std::move(r));
}

template <class K>
Poly<K> poly_sub(const Poly<K>& a, const Poly<K>& b) {
  return poly_add(a, poly_neg(b));
}

template <class K>
Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero_poly() || b.is_zero_poly()) return {};
  std::vector<K> r(a.coeffs.size() + b.coeffs.size() - 1, zero_like(a.coeffs[0]));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r[i + j] = r[i + j] + a.coeffs[i] * b.coeffs[j];
  }
  return Poly<K>(std::move(r));
}

template <class K>
Poly<K> poly_scale(const Poly<K>& a, const K& k) {
  if (is_zero(k)) return {};
  std::vector<K> r = a.coeffs;
  for (auto& c : r) c = c * k;
  return Poly<K>(std::move(r));
}

/// Multiply by var^n.
template <class K>
Poly<K> poly_shift(const Poly<K>& a, int n) {
  if (a.is_zero_poly() || n == 0) return a;
  std::vector<K> r(a.coeffs.size() + static_cast<std::size_t>(n), zero_like(a.coeffs[0]));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) r[i + n] = a.coeffs[i];
  return Poly<K>(std::move(r));
}

/// Euclidean division: g = q*b + r with deg r < deg b. Exact field arithmetic.
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& g, const Poly<K>& b) {
  if (b.is_zero_poly()) throw std::domain_error("poly_divmod: division by zero polynomial");
  if (g.is_zero_poly() || g.degree() < b.degree()) return {{}, g};
  std::vector<K> rem = g.coeffs;
  const K lead_inv = one_like(b.lc()) / b.lc();
  const int bdeg = b.degree();
  std::vector<K> q(rem.size() - b.coeffs.size() + 1, zero_like(b.lc()));
  for (int i = static_cast<int>(rem.size()) - 1; i >= bdeg; --i) {
    if (is_zero(rem[i])) continue;
    K f = rem[i] * lead_inv;
    for (int j = 0; j < bdeg; ++j)
      rem[i - bdeg + j] = rem[i - bdeg + j] - f * b.coeffs[j];
    rem[i] = zero_like(rem[i]);
    q[i - bdeg] = std::move(f);
  }
  return {Poly<K>(std::move(q)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& g, const Poly<K>& b) {
  return poly_divmod(g, b).second;
}

/// Exact quotient; throws if the division leaves a remainder.
template <class K>
Poly<K> poly_div_exact(const Poly<K>& g, const Poly<K>& b) {
  auto [q, r] = poly_divmod(g, b);
  if (!r.is_zero_poly()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

template <class K>
Poly<K> poly_monic(const Poly<K>& a) {
  if (a.is_zero_poly()) return a;
  return poly_scale(a, one_like(a.lc()) / a.lc());
}

/// Monic gcd by the Euclidean algorithm. Errors if both inputs are zero.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  if (a.is_zero_poly() && b.is_zero_poly())
    throw std::domain_error("poly_gcd: gcd(0, 0) undefined");
  if (a.degree() == 0 || b.degree() == 0)
    return Poly<K>::constant(one_like(a.is_zero_poly() ? b.lc() : a.lc()));
  while (!b.is_zero_poly()) {
    if (b.degree() == 0) return Poly<K>::constant(one_like(b.lc()));
    Poly<K> r = poly_mod(a, b);
    a = std::move(b);
    b = poly_monic(r);  // keeps intermediate coefficients tame
  }
  return poly_monic(a);
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g and g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_extgcd(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero_poly() && b.is_zero_poly())
    throw std::domain_error("poly_extgcd: gcd(0, 0) undefined");
  if (a.is_zero_poly()) {
    K inv = one_like(b.lc()) / b.lc();
    return {poly_monic(b), Poly<K>{}, Poly<K>::constant(inv)};
  }
  auto [q, r] = poly_divmod(b, a);
  auto [g, s1, t1] = poly_extgcd(r, a);
  // g = s1*(b - q*a) + t1*a
  Poly<K> s = poly_sub(t1, poly_mul(q, s1));
  return {std::move(g), std::move(s), std::move(s1)};
}

/// Solve sigma*a + tau*b = c with deg(sigma) < deg(b) for nonzero c.
/// Errors when gcd(a, b) does not divide c.
template <class K>
std::pair<Poly<K>, Poly<K>> solve_diophantine(const Poly<K>& a, const Poly<K>& b,
                                              const Poly<K>& c) {
  auto [g, s, t] = poly_extgcd(a, b);
  auto [h, rem] = poly_divmod(c, g);
  if (!rem.is_zero_poly())
    throw std::domain_error("solve_diophantine: gcd(a, b) does not divide c");
  Poly<K> sigma = poly_mul(s, h);
  Poly<K> tau = poly_mul(t, h);
  if (!sigma.is_zero_poly() && !b.is_zero_poly() && sigma.degree() >= b.degree()) {
    auto [q, r] = poly_divmod(sigma, b);
    sigma = std::move(r);
    tau = poly_add(tau, poly_mul(q, a));
  }
  return {std::move(sigma), std::move(tau)};
}

/// Formal derivative with respect to the polynomial's own variable;
/// coefficients are treated as constants.
template <class K>
Poly<K> poly_derivative(const Poly<K>& a) {
  if (a.coeffs.size() <= 1) return {};
  std::vector<K> r(a.coeffs.size() - 1, zero_like(a.coeffs[0]));
  for (std::size_t i = 1; i < a.coeffs.size(); ++i)
    r[i - 1] = a.coeffs[i] * int_like(a.coeffs[i], static_cast<long long>(i));
  return Poly<K>(std::move(r));
}

template <class K>
K poly_eval(const Poly<K>& a, const K& v) {
  K acc = zero_like(v);
  for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = acc * v + a.coeffs[i];
  return acc;
}

template <class K>
Poly<K> poly_pow(const Poly<K>& a, int e) {
  if (e < 0) throw std::domain_error("poly_pow: negative exponent");
  if (e == 0) {
    if (a.is_zero_poly()) throw std::domain_error("poly_pow: 0^0");
    return Poly<K>::constant(one_like(a.coeffs[0]));
  }
  Poly<K> acc = a, result;
  bool started = false;
  int n = e;
  while (n > 0) {
    if (n & 1) {
      result = started ? poly_mul(result, acc) : acc;
      started = true;
    }
    acc = poly_mul(acc, acc);
    n >>= 1;
  }
  return result;
}

}  // namespace integen
