#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integen/algebra.hpp"
#include "integen/liouville.hpp"
#include "integen/tower.hpp"

namespace integen {

using FPoly = Poly<FieldElem>;

/// One pass of Hermite reduction: extracted rational term, the remaining
/// integrand, and the diophantine witnesses.
struct HermiteStep {
  FieldElem extracted;
  FPoly remaining_num;
  FPoly remaining_den;
  FPoly sigma;
  FPoly tau;
};

struct HermiteResult {
  std::vector<HermiteStep> steps;
  FPoly final_num;  // square-free remaining integrand final_num / final_den
  FPoly final_den;
};

namespace detail {

inline void reduce_fraction(FPoly& num, FPoly& den) {
  if (num.is_zero_poly()) return;
  FPoly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = poly_div_exact(num, g);
    den = poly_div_exact(den, g);
  }
  FieldElem lc = den.lc();
  if (!lc.is_one_val()) {
    FieldElem inv = lc.inverse();
    num = poly_scale(num, inv);
    den = poly_scale(den, inv);
  }
}

}  // namespace detail

/// Repeated Hermite reduction of R/b (polynomials in the level-var_level
/// variable) until the remaining denominator is square-free. Each step removes
/// the highest-multiplicity square-free factor once.
inline HermiteResult hermite_reduce(FPoly R, FPoly b, const Tower& t, int var_level) {
  if (b.is_zero_poly()) throw std::domain_error("hermite_reduce: zero denominator");
  if (!R.is_zero_poly() && R.degree() >= b.degree())
    throw std::invalid_argument("hermite_reduce: integrand must be proper");
  HermiteResult out;
  while (true) {
    detail::reduce_fraction(R, b);
    if (R.is_zero_poly()) break;
    SquareFreeFactorization<FieldElem> sf = squarefree_factorize(b);
    int k = sf.max_multiplicity();
    if (k <= 1) break;
    FPoly bk;
    for (const auto& [f, m] : sf.factors)
      if (m == k) bk = f;
    FPoly bk_pow = poly_pow(bk, k);
    FPoly T = poly_div_exact(b, bk_pow);
    FPoly dbk = poly_tower_derivative(bk, t, var_level);
    auto [sigma, tau] = solve_diophantine(poly_mul(dbk, T), bk, R);

    FieldElem km1 = FieldElem::from_int(k - 1);
    FPoly den_extracted = poly_scale(poly_pow(bk, k - 1), km1);
    FieldElem extracted = elem_from_fraction(poly_neg(sigma), den_extracted, var_level);

    FPoly dsigma = poly_tower_derivative(sigma, t, var_level);
    FPoly new_num = poly_add(tau, poly_scale(poly_mul(dsigma, T), km1.inverse()));
    FPoly new_den = poly_div_exact(b, bk);

    out.steps.push_back({extracted, new_num, new_den, std::move(sigma), std::move(tau)});
    R = new_num;
    b = new_den;
  }
  out.final_num = std::move(R);
  out.final_den = std::move(b);
  return out;
}

/// res_theta(R - z D(b), b), a polynomial in the auxiliary variable z with
/// coefficients one level down. D is the full tower derivation.
struct TRResultant {
  FPoly poly_in_z;
};

namespace detail {

/// Determinant by fraction-free Bareiss elimination; every division is exact.
inline MPoly mpoly_det(std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::one();
  bool negate = false;
  MPoly prev = MPoly::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero_val()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero_val()) ++piv;
      if (piv == n) return MPoly();
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = m_exact_div(m_sub(m_mul(m[k][k], m[i][j]), m_mul(m[i][k], m[k][j])), prev);
      m[i][k] = MPoly();
    }
    prev = m[k][k];
  }
  MPoly det = m[n - 1][n - 1];
  return negate ? m_neg(det) : det;
}

}  // namespace detail

inline TRResultant tr_resultant(const FPoly& R, const FPoly& b, const Tower& t,
                                int var_level) {
  if (b.is_zero_poly()) throw std::domain_error("tr_resultant: zero denominator");
  if (poly_gcd(b, poly_derivative(b)).degree() > 0)
    throw std::domain_error("tr_resultant: denominator is not square-free");
  if (!R.is_zero_poly() && R.degree() >= b.degree())
    throw std::invalid_argument("tr_resultant: integrand must be proper");

  FPoly db = poly_tower_derivative(b, t, var_level);

  // The auxiliary variable z gets the MPoly slot just above the coefficient
  // levels; the theta being eliminated never appears in the entries.
  int lower = 0;
  auto note_levels = [&lower](const FPoly& p) {
    for (const auto& c : p.coeffs) lower = std::max(lower, c.level());
  };
  note_levels(R);
  note_levels(db);
  note_levels(b);
  const int zlev = lower + 1;

  // clear denominators: A~ = DA * (R - z db), b~ = DB * b
  int adeg = std::max(R.degree(), db.degree());
  std::vector<std::pair<MPoly, MPoly>> rparts, dparts;
  MPoly DA = MPoly::one();
  for (int i = 0; i <= adeg; ++i) {
    FieldElem r = !R.is_zero_poly() && i <= R.degree() ? R.coeffs[i] : FieldElem::zero();
    FieldElem d = !db.is_zero_poly() && i <= db.degree() ? db.coeffs[i] : FieldElem::zero();
    rparts.push_back(elem_to_mpoly(r));
    dparts.push_back(elem_to_mpoly(d));
    for (const MPoly* den : {&rparts.back().second, &dparts.back().second}) {
      MPoly g = m_gcd(DA, *den);
      DA = m_exact_div(m_mul(DA, *den), g);
    }
  }
  std::vector<MPoly> acoeffs;
  for (int i = 0; i <= adeg; ++i) {
    MPoly c0 = m_mul(rparts[i].first, m_exact_div(DA, rparts[i].second));
    MPoly c1 = m_neg(m_mul(dparts[i].first, m_exact_div(DA, dparts[i].second)));
    acoeffs.push_back(MPoly::make(zlev, {std::move(c0), std::move(c1)}));
  }
  while (!acoeffs.empty() && acoeffs.back().is_zero_val()) acoeffs.pop_back();
  if (acoeffs.empty()) return TRResultant{FPoly{}};
  adeg = static_cast<int>(acoeffs.size()) - 1;

  MPoly DB = MPoly::one();
  std::vector<std::pair<MPoly, MPoly>> bparts;
  for (const auto& c : b.coeffs) {
    bparts.push_back(elem_to_mpoly(c));
    MPoly g = m_gcd(DB, bparts.back().second);
    DB = m_exact_div(m_mul(DB, bparts.back().second), g);
  }
  std::vector<MPoly> bcoeffs;
  for (auto& [n, d] : bparts) bcoeffs.push_back(m_mul(n, m_exact_div(DB, d)));
  const int bdeg = b.degree();

  // Sylvester matrix of A~ (bdeg rows) over b~ (adeg rows), then Bareiss
  const int size = adeg + bdeg;
  std::vector<std::vector<MPoly>> mat(size, std::vector<MPoly>(size));
  for (int i = 0; i < bdeg; ++i)
    for (int j = 0; j <= adeg; ++j) mat[i][i + j] = acoeffs[adeg - j];
  for (int i = 0; i < adeg; ++i)
    for (int j = 0; j <= bdeg; ++j) mat[bdeg + i][i + j] = bcoeffs[bdeg - j];
  MPoly det = detail::mpoly_det(mat);

  // res(A, b) = res(A~, b~) / (DA^deg(b) * DB^deg(A))
  std::vector<FieldElem> zc;
  for (const auto& c : det.coeffs_at(zlev)) zc.push_back(mpoly_to_elem(c));
  FieldElem scale =
      mpoly_to_elem(DA).pow(bdeg) * mpoly_to_elem(DB).pow(adeg);
  FPoly out = poly_scale(FPoly(std::move(zc)), scale.inverse());
  return TRResultant{std::move(out)};
}

/// Divides by the leading coefficient and reports whether every coefficient is
/// a constant. By the Liouville-criterion argument this is equivalent to all
/// z-roots being constants.
inline bool constant_coefficient_check(const TRResultant& r) {
  if (r.poly_in_z.is_zero_poly())
    throw std::domain_error("constant_coefficient_check: zero resultant");
  FieldElem inv = r.poly_in_z.lc().inverse();
  for (const auto& c : r.poly_in_z.coeffs)
    if (!(c * inv).is_rational_const()) return false;
  return true;
}

enum class TrStatus { Success, NotElementary, UnsupportedSplitting };

struct TrResult {
  TrStatus status = TrStatus::Success;
  LiouvilleForm form;
  std::string detail;

  bool ok() const { return status == TrStatus::Success; }
};

namespace detail {

inline std::vector<long long> divisors_of(long long n) {
  std::vector<long long> out;
  if (n < 0) n = -n;
  for (long long i = 1; i * i <= n; ++i) {
    if (n % i) continue;
    out.push_back(i);
    if (i != n / i) out.push_back(n / i);
  }
  return out;
}

/// Rational roots with multiplicities by candidate testing and exact
/// deflation; conservative: gives up (empty result, complete=false) when the
/// divisor search is infeasible.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  Poly<Rational> deflated;
  bool complete = true;
};

inline RationalRoots rational_roots(Poly<Rational> m) {
  RationalRoots out;
  // clear denominators to an integer polynomial
  BigInt lcm(1);
  for (const auto& c : m.coeffs)
    lcm = lcm * (c.den() / BigInt::gcd(lcm, c.den()));
  std::vector<BigInt> zc;
  for (const auto& c : m.coeffs) zc.push_back(c.num() * (lcm / c.den()));

  // strip zero roots
  int zero_mult = 0;
  while (!zc.empty() && zc.front().is_zero()) {
    zc.erase(zc.begin());
    ++zero_mult;
  }
  if (zero_mult) out.roots.emplace_back(Rational(0), zero_mult);

  auto candidates = [&]() -> std::optional<std::vector<Rational>> {
    const BigInt& a0 = zc.front();
    const BigInt& an = zc.back();
    constexpr long long kCap = 4000000000000LL;
    if (!a0.fits_int64() || !an.fits_int64()) return std::nullopt;
    long long p0 = a0.to_int64(), pn = an.to_int64();
    if (std::llabs(p0) > kCap || std::llabs(pn) > kCap) return std::nullopt;
    std::vector<long long> dp = divisors_of(p0), dq = divisors_of(pn);
    if (dp.size() * dq.size() > 100000) return std::nullopt;
    std::vector<Rational> cands;
    for (long long p : dp)
      for (long long q : dq) {
        cands.emplace_back(p, q);
        cands.emplace_back(-p, q);
      }
    return cands;
  };

  Poly<Rational> cur;
  {
    std::vector<Rational> rc;
    for (const auto& c : zc) rc.emplace_back(c);
    cur = Poly<Rational>(std::move(rc));
  }
  if (cur.degree() >= 1) {
    auto cands = candidates();
    if (!cands) {
      out.complete = false;
    } else {
      for (const Rational& cand : *cands) {
        if (cur.degree() < 1) break;
        int mult = 0;
        while (cur.degree() >= 1 && poly_eval(cur, cand).is_zero()) {
          auto [q, r] = poly_divmod(cur, Poly<Rational>{-cand, Rational(1)});
          cur = std::move(q);
          ++mult;
        }
        if (mult) out.roots.emplace_back(cand, mult);
      }
    }
  }
  out.deflated = poly_monic(cur);
  return out;
}

inline Poly<Rational> constant_poly_of(const FPoly& p) {
  std::vector<Rational> out;
  for (const auto& c : p.coeffs) {
    auto r = c.as_rational();
    if (!r) throw std::logic_error("constant_poly_of: non-constant coefficient");
    out.push_back(*r);
  }
  return Poly<Rational>(std::move(out));
}

/// Solve A*p + B*q = n coefficient-wise for rational constants A, B.
inline std::optional<std::pair<Rational, Rational>> solve_two_unknowns(
    const std::vector<std::array<FieldElem, 3>>& rows) {
  auto verify = [&](const FieldElem& A, const FieldElem& B) {
    for (const auto& r : rows)
      if (!(A * r[0] + B * r[1] - r[2]).is_zero_val()) return false;
    return true;
  };
  // try all row pairs for an invertible 2x2 system
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      FieldElem det = rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1];
      if (det.is_zero_val()) continue;
      FieldElem A = (rows[i][2] * rows[j][1] - rows[j][2] * rows[i][1]) / det;
      FieldElem B = (rows[i][0] * rows[j][2] - rows[j][0] * rows[i][2]) / det;
      if (!verify(A, B)) return std::nullopt;
      auto ar = A.as_rational(), br = B.as_rational();
      if (!ar || !br) return std::nullopt;
      return std::make_pair(*ar, *br);
    }
  }
  // rank <= 1: try B = 0, then A = 0
  for (const auto& r : rows) {
    if (!r[0].is_zero_val()) {
      FieldElem A = r[2] / r[0];
      if (verify(A, FieldElem::zero())) {
        auto ar = A.as_rational();
        if (ar) return std::make_pair(*ar, Rational(0));
      }
      break;
    }
  }
  for (const auto& r : rows) {
    if (!r[1].is_zero_val()) {
      FieldElem B = r[2] / r[1];
      if (verify(FieldElem::zero(), B)) {
        auto br = B.as_rational();
        if (br) return std::make_pair(Rational(0), *br);
      }
      break;
    }
  }
  if (verify(FieldElem::zero(), FieldElem::zero()))
    return std::make_pair(Rational(0), Rational(0));
  return std::nullopt;
}

}  // namespace detail

/// The variable of a level as an element: x at level 0, theta_k above.
inline FieldElem level_var_elem(const Tower& t, int var_level) {
  return var_level == 0 ? FieldElem::var_x() : t.theta(var_level);
}

/// Forward Rothstein-Trager integration of R/b with b square-free and
/// gcd(R, b) = 1. Emits log terms for rational residues, matching
/// log + arctan pairs for constant conjugate residue pairs attached to
/// theta^2 + r^2 factors, and (for exponential towers) the -c deg(v) u
/// correction in v0. Residue splittings outside those families return
/// UnsupportedSplitting rather than a wrong answer.
inline TrResult tr_integrate(const FPoly& R, const FPoly& b, const Tower& t,
                             int var_level) {
  if (b.is_zero_poly()) throw std::domain_error("tr_integrate: zero denominator");
  if (!R.is_zero_poly() && R.degree() >= b.degree())
    throw std::invalid_argument("tr_integrate: integrand must be proper");
  TrResult out;
  if (R.is_zero_poly()) return out;
  if (poly_gcd(R, b).degree() > 0)
    throw std::invalid_argument("tr_integrate: gcd(R, b) != 1");
  bool exp_case = false;
  if (var_level >= 1 && t.ext(var_level).kind == ExtKind::Exp) {
    exp_case = true;
    if (is_zero(b.coeffs[0]))
      throw std::invalid_argument("tr_integrate: theta divides an exp-case denominator");
  }

  TRResultant rr = tr_resultant(R, b, t, var_level);
  if (!constant_coefficient_check(rr)) {
    out.status = TrStatus::NotElementary;
    out.detail = "TR-resultant has non-constant coefficients";
    return out;
  }
  FPoly monic_z = poly_scale(rr.poly_in_z, rr.poly_in_z.lc().inverse());
  Poly<Rational> mz = detail::constant_poly_of(monic_z);

  auto unsupported = [&](std::string why) {
    TrResult r;
    r.status = TrStatus::UnsupportedSplitting;
    r.detail = std::move(why);
    return r;
  };

  detail::RationalRoots roots = detail::rational_roots(mz);
  if (!roots.complete) return unsupported("residue root search infeasible");

  FPoly db = poly_tower_derivative(b, t, var_level);
  FPoly b_rest = b;
  Poly<Rational> m_rest = roots.deflated;
  LiouvilleForm form;
  Rational exp_correction(0);  // sum of c * deg(v), the exp-case v0 correction

  for (const auto& [zj, mult] : roots.roots) {
    if (zj.is_zero()) return unsupported("zero residue with coprime input");
    FPoly vj = poly_gcd(poly_sub(R, poly_scale(db, FieldElem(zj))), b);
    if (vj.degree() < 1 || vj.degree() != mult)
      return unsupported("residue multiplicity does not match its log argument");
    auto [q, rem] = poly_divmod(b_rest, vj);
    if (!rem.is_zero_poly()) return unsupported("log argument does not divide denominator");
    b_rest = std::move(q);
    form.logs.emplace_back(zj, elem_from_fraction(vj, FPoly{FieldElem::one()}, var_level));
    if (exp_case) exp_correction += zj * Rational(vj.degree());
  }

  if (b_rest.degree() > 0) {
    // remaining factors must be theta^2 + r^2 shapes carrying conjugate pairs
    Poly<Rational> brq;
    for (const auto& c : b_rest.coeffs) {
      auto r = c.as_rational();
      if (!r) return unsupported("non-constant residual denominator factor");
      brq.coeffs.push_back(*r);
    }
    brq.trim();
    std::vector<Rational> even;
    for (int i = 0; i <= brq.degree(); ++i) {
      if (i % 2 == 1 && !brq.coeffs[i].is_zero())
        return unsupported("residual denominator factor has odd powers");
      if (i % 2 == 0) even.push_back(brq.coeffs[i]);
    }
    detail::RationalRoots wroots = detail::rational_roots(Poly<Rational>(even));
    if (!wroots.complete || wroots.deflated.degree() != 0)
      return unsupported("residual denominator does not split over the supported family");

    FieldElem var = level_var_elem(t, var_level);
    for (const auto& [w, mult] : wroots.roots) {
      if (mult != 1) return unsupported("repeated quadratic factor in square-free input");
      Rational s = -w;
      if (!s.is_negative() && !s.is_zero()) {
        auto rad = rational_sqrt(s);
        if (!rad || rad->is_zero())
          return unsupported("quadratic factor radius is not rational");
        Rational r = *rad;
        FPoly f{FieldElem(s), FieldElem::zero(), FieldElem::one()};
        FPoly rest = poly_div_exact(b, f);
        auto [g2, s2, t2] = poly_extgcd(rest, f);
        (void)t2;
        if (g2.degree() != 0) return unsupported("quadratic factor not coprime to cofactor");
        FPoly n = poly_mod(poly_mul(poly_mod(R, f), s2), f);

        FPoly df = poly_tower_derivative(f, t, var_level);
        FPoly dtheta_poly;
        if (var_level == 0) {
          dtheta_poly = FPoly{FieldElem::one()};
        } else if (t.ext(var_level).kind == ExtKind::Log) {
          const Extension& ex = t.ext(var_level);
          dtheta_poly = FPoly{derive(ex.arg, t) / ex.arg};
        } else {
          dtheta_poly = FPoly{FieldElem::zero(), derive(t.ext(var_level).arg, t)};
        }
        // A * D(f) + B * (r * Dtheta) = N, coefficient-wise
        std::vector<std::array<FieldElem, 3>> rows;
        int top = std::max({df.degree(), dtheta_poly.degree(), n.degree()});
        for (int i = 0; i <= top; ++i) {
          FieldElem p = i <= df.degree() ? df.coeffs[i] : FieldElem::zero();
          FieldElem q = i <= dtheta_poly.degree()
                            ? dtheta_poly.coeffs[i] * FieldElem(r)
                            : FieldElem::zero();
          FieldElem rhs = !n.is_zero_poly() && i <= n.degree() ? n.coeffs[i]
                                                               : FieldElem::zero();
          rows.push_back({p, q, rhs});
        }
        auto sol = detail::solve_two_unknowns(rows);
        if (!sol) return unsupported("conjugate residue pair is not in the supported family");
        auto [A, B] = *sol;

        // the pair contributes z^2 - 2A z + (A^2 + B^2/4) to the resultant
        Poly<Rational> quad{A * A + B * B * Rational(1, 4), Rational(-2) * A, Rational(1)};
        auto [mq, mr] = poly_divmod(m_rest, quad);
        if (!mr.is_zero_poly())
          return unsupported("quadratic residue pair does not divide the resultant");
        m_rest = std::move(mq);

        FieldElem f_elem = elem_from_fraction(f, FPoly{FieldElem::one()}, var_level);
        if (!A.is_zero()) {
          form.logs.emplace_back(A, f_elem);
          if (exp_case) exp_correction += A * Rational(2);
        }
        if (!B.is_zero()) form.arctans.emplace_back(B, var / FieldElem(r));
        auto [bq, brem] = poly_divmod(b_rest, f);
        if (!brem.is_zero_poly())
          return unsupported("quadratic factor bookkeeping failed");
        b_rest = std::move(bq);
      } else {
        return unsupported("residual quadratic factor is not positive definite");
      }
    }
  }
  if (m_rest.degree() != 0 || b_rest.degree() != 0)
    return unsupported("unaccounted residue factors remain");

  if (exp_case && !exp_correction.is_zero())
    form.v0 = form.v0 - FieldElem(exp_correction) * t.ext(var_level).arg;

  // the result must differentiate back to the integrand, exactly
  FieldElem integrand = elem_from_fraction(R, b, var_level);
  if (!(derive(form, t) - integrand).is_zero_val())
    throw std::logic_error("tr_integrate: derivative check failed");
  out.form = std::move(form);
  return out;
}

/// Hermite reduction followed by forward Rothstein-Trager on the square-free
/// remainder; the complete rational-part integrator used for verification.
inline TrResult integrate_rational(FPoly R, FPoly b, const Tower& t, int var_level) {
  detail::reduce_fraction(R, b);
  if (!R.is_zero_poly() && R.degree() >= b.degree())
    throw std::invalid_argument("integrate_rational: integrand must be proper");
  HermiteResult h = hermite_reduce(R, b, t, var_level);
  LiouvilleForm acc;
  for (const auto& step : h.steps) acc.v0 = acc.v0 + step.extracted;
  if (h.final_num.is_zero_poly()) {
    TrResult out;
    out.form = std::move(acc);
    return out;
  }
  if (h.final_den.degree() == 0) {
    TrResult out;
    out.status = TrStatus::UnsupportedSplitting;
    out.detail = "remaining integrand lies in the coefficient field";
    return out;
  }
  TrResult tr = tr_integrate(h.final_num, h.final_den, t, var_level);
  if (!tr.ok()) return tr;
  tr.form.v0 = tr.form.v0 + acc.v0;
  return tr;
}

}  // namespace integen
