#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "integen/poly.hpp"

namespace integen {

/// b = unit * prod(factor_i ^ multiplicity_i) with monic, square-free,
/// pairwise-coprime factors.
template <class K>
struct SquareFreeFactorization {
  K unit;
  std::vector<std::pair<Poly<K>, int>> factors;

  Poly<K> reconstruct() const {
    Poly<K> acc = Poly<K>::constant(unit);
    for (const auto& [f, m] : factors) acc = poly_mul(acc, poly_pow(f, m));
    return acc;
  }

  int max_multiplicity() const {
    int k = 0;
    for (const auto& [f, m] : factors) k = std::max(k, m);
    return k;
  }
};

/// Yun's algorithm. The derivative is taken with respect to the polynomial's
/// own variable, coefficients held constant.
template <class K>
SquareFreeFactorization<K> squarefree_factorize(const Poly<K>& b) {
  if (b.is_zero_poly()) throw std::domain_error("squarefree_factorize: zero input");
  SquareFreeFactorization<K> out;
  out.unit = b.lc();
  Poly<K> f = poly_monic(b);
  if (f.degree() == 0) return out;
  Poly<K> df = poly_derivative(f);
  Poly<K> g = poly_gcd(f, df);
  Poly<K> c = poly_div_exact(f, g);
  Poly<K> d = poly_sub(poly_div_exact(df, g), poly_derivative(c));
  for (int i = 1; c.degree() > 0; ++i) {
    Poly<K> a = poly_gcd(c, d);  // d == 0 yields monic c, the final block
    if (a.degree() > 0) out.factors.emplace_back(a, i);
    c = poly_div_exact(c, a);
    if (c.degree() == 0) break;
    d = poly_sub(poly_div_exact(d, a), poly_derivative(c));
  }
  return out;
}

/// PRS resultant over a coefficient field, using
/// res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg r} res(B, r) with r = A mod B.
template <class K>
K resultant_prs(Poly<K> a, Poly<K> b) {
  if (a.is_zero_poly() || b.is_zero_poly())
    throw std::domain_error("resultant: zero polynomial input");
  K acc = one_like(a.lc());
  bool negate = false;
  while (true) {
    if (a.degree() < b.degree()) {
      if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
      std::swap(a, b);
    }
    if (b.degree() == 0) {
      K v = b.lc();
      K p = one_like(v);
      for (int i = 0; i < a.degree(); ++i) p = p * v;
      acc = acc * p;
      break;
    }
    Poly<K> r = poly_mod(a, b);
    if (r.is_zero_poly()) return zero_like(acc);
    if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
    K lcb = b.lc();
    K p = one_like(lcb);
    for (int i = 0; i < a.degree() - r.degree(); ++i) p = p * lcb;
    acc = acc * p;
    a = std::move(b);
    b = std::move(r);
  }
  return negate ? -acc : acc;
}

/// Reference implementation: determinant of the Sylvester matrix by Gaussian
/// elimination with exact field arithmetic. Kept independent of the PRS route
/// for cross-checking.
template <class K>
K resultant_sylvester(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero_poly() || b.is_zero_poly())
    throw std::domain_error("resultant: zero polynomial input");
  const int m = a.degree(), n = b.degree();
  const int size = m + n;
  const K zero = zero_like(a.lc());
  const K one = one_like(a.lc());
  if (size == 0) return one;
  std::vector<std::vector<K>> mat(size, std::vector<K>(size, zero));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) mat[i][i + j] = a.coeffs[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) mat[n + i][i + j] = b.coeffs[n - j];

  K det = one;
  bool negate = false;
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row) {
      if (!is_zero(mat[row][col])) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return zero;
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      negate = !negate;
    }
    det = det * mat[col][col];
    K inv = one / mat[col][col];
    for (int row = col + 1; row < size; ++row) {
      if (is_zero(mat[row][col])) continue;
      K f = mat[row][col] * inv;
      for (int j = col; j < size; ++j) mat[row][j] = mat[row][j] - f * mat[col][j];
    }
  }
  return negate ? -det : det;
}

/// Proper-fraction expansion over a square-free-factorization-shaped
/// denominator: poly_part + sum num_{ij} / factor_i^j with
/// deg(num_{ij}) < deg(factor_i).
template <class K>
struct PartialFractions {
  struct Term {
    Poly<K> numerator;
    Poly<K> factor;
    int power = 1;
  };
  Poly<K> poly_part;
  std::vector<Term> terms;

  Poly<K> recombine_num(const Poly<K>& den) const {
    Poly<K> acc = poly_mul(poly_part, den);
    for (const auto& t : terms) {
      Poly<K> rest = poly_div_exact(den, poly_pow(t.factor, t.power));
      acc = poly_add(acc, poly_mul(t.numerator, rest));
    }
    return acc;
  }
};

template <class K>
PartialFractions<K> partial_fractions(const Poly<K>& r,
                                      const std::vector<std::pair<Poly<K>, int>>& factors) {
  if (factors.empty()) throw std::domain_error("partial_fractions: empty factor list");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].first.degree() < 1 || factors[i].second < 1)
      throw std::domain_error("partial_fractions: factors must be nonconstant, power >= 1");
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (poly_gcd(factors[i].first, factors[j].first).degree() > 0)
        throw std::domain_error("partial_fractions: factors are not pairwise coprime");
    }
  }
  Poly<K> den = Poly<K>::constant(one_like(factors[0].first.lc()));
  for (const auto& [f, m] : factors) den = poly_mul(den, poly_pow(f, m));

  PartialFractions<K> out;
  auto [p, rem] = poly_divmod(r, den);
  out.poly_part = std::move(p);

  for (const auto& [f, m] : factors) {
    Poly<K> fm = poly_pow(f, m);
    Poly<K> rest = poly_div_exact(den, fm);
    // component of rem/den over f^m: rem * rest^{-1} mod f^m
    auto [g, s, t] = poly_extgcd(rest, fm);
    (void)t;
    if (g.degree() != 0)
      throw std::logic_error("partial_fractions: internal inverse failure");
    Poly<K> comp = poly_mod(poly_mul(poly_mod(rem, fm), s), fm);
    // f-adic digits, highest power first
    for (int j = m; j >= 1; --j) {
      auto [q2, digit] = poly_divmod(comp, f);
      if (!digit.is_zero_poly())
        out.terms.push_back({std::move(digit), f, j});
      comp = std::move(q2);
    }
    if (!comp.is_zero_poly())
      throw std::logic_error("partial_fractions: expansion overflow");
  }
  return out;
}

}  // namespace integen
