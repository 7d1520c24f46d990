#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "integen/liouville.hpp"
#include "integen/tower.hpp"
#include "integen/towerexpr.hpp"
#include "test_util.hpp"

using namespace integen;

namespace {

// element of Q(x) from numerator/denominator coefficient lists (ascending)
FieldElem qx_elem(std::initializer_list<Rational> num, std::initializer_list<Rational> den) {
  return FieldElem(RatFunc<Rational>(Poly<Rational>(num), Poly<Rational>(den)));
}

FieldElem qx_elem(std::initializer_list<Rational> num) {
  return qx_elem(num, {Rational(1)});
}

Tower log_x_tower() {
  Tower t;
  t.push(ExtKind::Log, FieldElem::var_x());
  return t;
}

Tower log_inv_x_tower() {
  Tower t;
  t.push(ExtKind::Log, FieldElem::one() / FieldElem::var_x());
  return t;
}

FieldElem rand_elem(std::mt19937_64& rng, const Tower& t, bool nonzero = false) {
  std::uniform_int_distribution<int> nterms(1, t.height() > 1 ? 2 : 3);
  std::uniform_int_distribution<int> pw(0, 2);
  std::uniform_int_distribution<int> pw_top(0, 1);
  auto part = [&] {
    FieldElem acc = FieldElem::zero();
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      FieldElem m = FieldElem(testutil::rand_nonzero_rational(rng, 6));
      m = m * FieldElem::var_x().pow(pw(rng));
      for (int lv = 1; lv <= t.height(); ++lv)
        m = m * t.theta(lv).pow(lv == t.height() && t.height() > 1 ? pw_top(rng) : pw(rng));
      acc = acc + m;
    }
    return acc;
  };
  FieldElem num = part();
  FieldElem den = part();
  while (den.is_zero_val()) den = part();
  FieldElem e = num / den;
  while (nonzero && e.is_zero_val()) e = rand_elem(rng, t, true);
  return e;
}

}  // namespace

TEST_CASE("derivation basics") {
  Tower t;  // base field only
  CHECK(derive(FieldElem::var_x(), t) == FieldElem::one());
  CHECK(derive(FieldElem(Rational(7, 3)), t).is_zero_val());

  Tower tl = log_inv_x_tower();
  // theta = log(1/x): D(theta) = (d(1/x)/dx)/(1/x) = -1/x
  FieldElem dtheta = derive(tl.theta(1), tl);
  CHECK(dtheta == -(FieldElem::one() / FieldElem::var_x()));
}

TEST_CASE("polynomial pair of the worked degree-2 example differentiates exactly") {
  Tower t = log_inv_x_tower();
  FieldElem x = FieldElem::var_x();
  FieldElem theta = t.theta(1);

  FieldElem q0 = qx_elem({2, -7, 8}, {0, 1});   // (8x^2 - 7x + 2)/x = -7 + 8x + 2/x
  FieldElem q1 = qx_elem({-6, -5, 4}, {0, 1});  // -5 + 4x - 6/x
  FieldElem q2 = qx_elem({1, 2});               // 1 + 2x

  FieldElem p = q2 * theta.pow(2) + q1 * theta + q0;
  FieldElem dp = derive(p, t);

  // the printed derivative:
  // 2 theta^2 + (-2(1+2x)/x + 4 + 6/x^2) theta - (-5+4x-6/x)/x + 8 - 2/x^2
  FieldElem two = FieldElem::from_int(2);
  FieldElem c1 = FieldElem::from_int(-2) * q2 / x + FieldElem::from_int(4) +
                 FieldElem::from_int(6) / (x * x);
  FieldElem c0 = -q1 / x + FieldElem::from_int(8) - two / (x * x);
  FieldElem expected = two * theta.pow(2) + c1 * theta + c0;
  CHECK(dp == expected);
}

TEST_CASE("canonicalize") {
  Tower t = log_x_tower();
  FieldElem theta = t.theta(1);
  FieldElem e = (theta * theta - FieldElem::one()) / (theta - FieldElem::one());
  CHECK(e == theta + FieldElem::one());

  FieldElem r = derive(theta, t) - FieldElem::one() / FieldElem::var_x();
  CHECK(r.is_zero_val());

  FieldElem c = canonicalize(e);
  CHECK(c == e);
  CHECK(canonicalize(c) == c);
}

TEST_CASE("derivation axioms on random elements") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Tower t;
    switch (trial % 4) {
      case 0: break;
      case 1: t = log_x_tower(); break;
      case 2:
        t.push(ExtKind::Exp, FieldElem::var_x());
        break;
      default:
        t = log_x_tower();
        t.push(ExtKind::Exp, FieldElem::var_x() * FieldElem::var_x());
        break;
    }
    FieldElem a = rand_elem(rng, t);
    FieldElem b = rand_elem(rng, t);
    CHECK(derive(a + b, t) == derive(a, t) + derive(b, t));
    CHECK(derive(a * b, t) == a * derive(b, t) + b * derive(a, t));
    if (!a.is_zero_val()) {
      CHECK(derive(a.inverse(), t) == -(derive(a, t) / (a * a)));
    }
    CHECK(derive(FieldElem(testutil::rand_rational(rng)), t).is_zero_val());
  }
}

TEST_CASE("extension derivation rules hold exactly") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    Tower base;
    FieldElem u = rand_elem(rng, base, /*nonzero=*/true);
    if (u.is_rational_const()) continue;
    {
      Tower t;
      t.push(ExtKind::Log, u);
      CHECK(derive(t.theta(1), t) * u == derive(u, t));
    }
    {
      Tower t;
      t.push(ExtKind::Exp, u);
      CHECK(derive(t.theta(1), t) == derive(u, t) * t.theta(1));
    }
  }
}

TEST_CASE("canonicalize preserves value across representations") {
  std::mt19937_64 rng(44);
  Tower t = log_x_tower();
  for (int trial = 0; trial < 50; ++trial) {
    FieldElem a = rand_elem(rng, t);
    FieldElem b = rand_elem(rng, t, /*nonzero=*/true);
    FieldElem q = a / b;
    // cross-multiplication: q * b == a exactly
    CHECK(q * b == a);
    CHECK(canonicalize(q) == q);
  }
}

TEST_CASE("tower validation rejects visible algebraic dependencies") {
  Tower t;
  CHECK_THROWS_AS(t.push(ExtKind::Log, FieldElem(Rational(3))), std::invalid_argument);
  t.push(ExtKind::Exp, FieldElem::var_x());
  // log(exp(x)^2) is algebraic over the tower
  CHECK_THROWS_AS(t.push(ExtKind::Log, t.theta(1) * t.theta(1)), std::invalid_argument);

  Tower t2 = log_x_tower();
  // exp((3/2) log(x)) is algebraic
  CHECK_THROWS_AS(t2.push(ExtKind::Exp, FieldElem(Rational(3, 2)) * t2.theta(1)),
                  std::invalid_argument);
  // exp(x * log(x)) is fine syntactically
  t2.push(ExtKind::Exp, FieldElem::var_x() * t2.theta(1));
  CHECK(t2.height() == 2);
}

TEST_CASE("to_expr basics") {
  Tower t = log_inv_x_tower();
  FieldElem xp1 = FieldElem::var_x() + FieldElem::one();
  ExprPtr e = to_expr(xp1, t);
  CHECK(expr_equal(e, mk(ExprKind::Add, mk_x(), mk_int(1))));
  CHECK(infix(e) == "x + 1");

  FieldElem th2 = t.theta(1).pow(2);
  ExprPtr e2 = to_expr(th2, t);
  ExprPtr expected = mk(ExprKind::Pow, mk(ExprKind::Ln, mk(ExprKind::Div, mk_int(1), mk_x())),
                        mk_int(2));
  CHECK(expr_equal(e2, expected));
  CHECK(infix(e2) == "ln(1/x)^2");
}

TEST_CASE("to_expr of a full antiderivative form") {
  Tower t = log_x_tower();
  FieldElem x = FieldElem::var_x();
  FieldElem theta = t.theta(1);

  // -(5x^3+1) / (5(1+x)(theta+x)) + 2 ln(theta+1) + 4 ln(theta+x)
  FieldElem five_x3_p1 = FieldElem::from_int(5) * x.pow(3) + FieldElem::one();
  FieldElem v0 = -five_x3_p1 /
                 (FieldElem::from_int(5) * (FieldElem::one() + x) * (theta + x));
  LiouvilleForm f;
  f.v0 = v0;
  f.logs = {{Rational(2), theta + FieldElem::one()}, {Rational(4), theta + x}};

  ExprPtr got = to_expr(f, t);
  CHECK(infix(got) ==
        "(-x^3 - 1/5)/(x + 1)/(ln(x) + x) + 2*ln(ln(x) + 1) + 4*ln(ln(x) + x)");

  ExprPtr lnx = mk(ExprKind::Ln, mk_x());
  ExprPtr coeff = mk(ExprKind::Div,
                     mk(ExprKind::Sub, mk(ExprKind::Neg, mk(ExprKind::Pow, mk_x(), mk_int(3))),
                        mk(ExprKind::Div, mk_int(1), mk_int(5))),
                     mk(ExprKind::Add, mk_x(), mk_int(1)));
  ExprPtr v0e = mk(ExprKind::Div, coeff, mk(ExprKind::Add, lnx, mk_x()));
  ExprPtr t2 = mk(ExprKind::Mul, mk_int(2),
                  mk(ExprKind::Ln, mk(ExprKind::Add, lnx, mk_int(1))));
  ExprPtr t3 = mk(ExprKind::Mul, mk_int(4),
                  mk(ExprKind::Ln, mk(ExprKind::Add, lnx, mk_x())));
  ExprPtr expected = mk(ExprKind::Add, mk(ExprKind::Add, v0e, t2), t3);
  CHECK(expr_equal(got, expected));
}

TEST_CASE("liouville derivative and grouping comparator") {
  Tower t = log_x_tower();
  FieldElem theta = t.theta(1);
  LiouvilleForm split;
  split.logs = {{Rational(1), theta + FieldElem::one()},
                {Rational(1), theta - FieldElem::from_int(3)}};
  LiouvilleForm merged;
  merged.logs = {{Rational(1),
                  (theta + FieldElem::one()) * (theta - FieldElem::from_int(3))}};
  CHECK(forms_match(split, merged));
  CHECK(derive(split, t) == derive(merged, t));

  LiouvilleForm other;
  other.logs = {{Rational(2), theta + FieldElem::one()}};
  CHECK(!forms_match(split, other));
}
