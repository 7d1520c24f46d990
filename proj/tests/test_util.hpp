#pragma once

#include <random>
#include <vector>

#include "integen/poly.hpp"
#include "integen/ratfunc.hpp"
#include "integen/rational.hpp"

namespace testutil {

using integen::Poly;
using integen::RatFunc;
using integen::Rational;

inline Rational rand_rational(std::mt19937_64& rng, long long bound = 9) {
  std::uniform_int_distribution<long long> num(-bound, bound);
  std::uniform_int_distribution<long long> den(1, 4);
  return Rational(num(rng), den(rng));
}

inline Rational rand_nonzero_rational(std::mt19937_64& rng, long long bound = 9) {
  Rational r = rand_rational(rng, bound);
  while (r.is_zero()) r = rand_rational(rng, bound);
  return r;
}

inline Poly<Rational> rand_poly(std::mt19937_64& rng, int max_deg, long long bound = 9) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng);
  std::vector<Rational> c;
  c.reserve(d + 1);
  for (int i = 0; i < d; ++i) c.push_back(rand_rational(rng, bound));
  c.push_back(rand_nonzero_rational(rng, bound));
  return Poly<Rational>(std::move(c));
}

inline Poly<Rational> rand_nonzero_poly(std::mt19937_64& rng, int max_deg,
                                        long long bound = 9) {
  Poly<Rational> p = rand_poly(rng, max_deg, bound);
  while (p.is_zero_poly()) p = rand_poly(rng, max_deg, bound);
  return p;
}

// polynomial in theta with Q(x) coefficients
inline Poly<RatFunc<Rational>> rand_qx_poly(std::mt19937_64& rng, int max_deg,
                                            int max_xdeg = 2) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng);
  std::vector<RatFunc<Rational>> c;
  for (int i = 0; i <= d; ++i)
    c.emplace_back(rand_poly(rng, max_xdeg, 5));
  Poly<RatFunc<Rational>> p(std::move(c));
  if (p.is_zero_poly()) p = Poly<RatFunc<Rational>>{RatFunc<Rational>(rand_nonzero_poly(rng, max_xdeg, 5))};
  return p;
}

}  // namespace testutil
