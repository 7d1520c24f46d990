#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "integen/dataset.hpp"
#include "integen/records.hpp"
#include "integen/towerexpr.hpp"

using namespace integen;

namespace {

ExprPtr rand_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 9);
  switch (kind(rng)) {
    case 0: return mk_x();
    case 1: {
      std::uniform_int_distribution<long long> v(-30, 30);
      return mk_int(v(rng));
    }
    case 2: return mk(ExprKind::Neg, rand_expr(rng, depth - 1));
    case 3: return mk(ExprKind::Ln, rand_expr(rng, depth - 1));
    case 4: return mk(ExprKind::Exp, rand_expr(rng, depth - 1));
    case 5: return mk(ExprKind::Arctan, rand_expr(rng, depth - 1));
    case 6: return mk(ExprKind::Add, rand_expr(rng, depth - 1), rand_expr(rng, depth - 1));
    case 7: return mk(ExprKind::Sub, rand_expr(rng, depth - 1), rand_expr(rng, depth - 1));
    case 8: return mk(ExprKind::Mul, rand_expr(rng, depth - 1), rand_expr(rng, depth - 1));
    default: {
      std::uniform_int_distribution<long long> e(2, 5);
      return mk(ExprKind::Pow, rand_expr(rng, depth - 1), mk_int(e(rng)));
    }
  }
}

std::vector<std::string> toks(std::initializer_list<const char*> xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

TEST_CASE("to_prefix examples") {
  CHECK(to_prefix(mk(ExprKind::Add, mk_x(), mk_int(1))) == toks({"add", "x", "1"}));

  // 3x^2 + ln(2x) - 1
  ExprPtr e = mk(ExprKind::Sub,
                 mk(ExprKind::Add, mk(ExprKind::Mul, mk_int(3), mk(ExprKind::Pow, mk_x(), mk_int(2))),
                    mk(ExprKind::Ln, mk(ExprKind::Mul, mk_int(2), mk_x()))),
                 mk_int(1));
  CHECK(to_prefix(e) ==
        toks({"sub", "add", "mul", "3", "pow", "x", "2", "ln", "mul", "2", "x", "1"}));

  CHECK(to_prefix(mk_int(-5)) == toks({"neg", "5"}));
}

TEST_CASE("from_prefix inverse and errors") {
  ExprPtr e = from_prefix(toks({"add", "x", "1"}));
  CHECK(expr_equal(e, mk(ExprKind::Add, mk_x(), mk_int(1))));

  CHECK_THROWS_AS(from_prefix(toks({"add", "x"})), PrefixParseError);
  CHECK_THROWS_AS(from_prefix(toks({"add", "x", "1", "1"})), PrefixParseError);
  CHECK_THROWS_AS(from_prefix(toks({"bogus"})), PrefixParseError);
  try {
    from_prefix(toks({"add", "x"}));
  } catch (const PrefixParseError& err) {
    CHECK(err.position == 2);
  }
}

TEST_CASE("round trip of the worked degree-2 derivative") {
  Tower t;
  t.push(ExtKind::Log, FieldElem::one() / FieldElem::var_x());
  auto qx = [](std::initializer_list<Rational> num, std::initializer_list<Rational> den) {
    return FieldElem(RatFunc<Rational>(Poly<Rational>(num), Poly<Rational>(den)));
  };
  FieldElem theta = t.theta(1);
  FieldElem p = qx({1, 2}, {1}) * theta.pow(2) + qx({-6, -5, 4}, {0, 1}) * theta +
                qx({2, -7, 8}, {0, 1});
  ExprPtr tree = to_expr(derive(p, t), t);
  CHECK(expr_equal(from_prefix(to_prefix(tree)), tree));
}

TEST_CASE("prefix round trip on random expressions") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    ExprPtr e = rand_expr(rng, 5);
    CHECK(expr_equal(from_prefix(to_prefix(e)), e));
  }
}

TEST_CASE("const_canonicalize") {
  {
    ExprPtr e = mk(ExprKind::Mul, mk_int(2), mk_x());
    CHECK(to_prefix(const_canonicalize(e)) == toks({"mul", "CONST", "x"}));
  }
  {
    // -5 + 4x - 6/x keeps its shape, coefficients become CONST
    ExprPtr e = mk(ExprKind::Sub,
                   mk(ExprKind::Add, mk_int(-5), mk(ExprKind::Mul, mk_int(4), mk_x())),
                   mk(ExprKind::Div, mk_int(6), mk_x()));
    CHECK(to_prefix(const_canonicalize(e)) ==
          toks({"sub", "add", "CONST", "mul", "CONST", "x", "div", "CONST", "x"}));
  }
  {
    ExprPtr e = mk(ExprKind::Ln, mk_x());
    CHECK(expr_equal(const_canonicalize(e), e));
  }
  {
    // pow exponents survive, constant bases collapse
    ExprPtr e = mk(ExprKind::Pow, mk_x(), mk_int(3));
    CHECK(to_prefix(const_canonicalize(e)) == toks({"pow", "x", "3"}));
    ExprPtr c = mk(ExprKind::Pow, mk_int(2), mk_int(3));
    CHECK(to_prefix(const_canonicalize(c)) == toks({"CONST"}));
  }
  {
    // idempotence on random trees
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
      ExprPtr e = rand_expr(rng, 5);
      ExprPtr once = const_canonicalize(e);
      CHECK(expr_equal(const_canonicalize(once), once));
    }
  }
}

TEST_CASE("dataset_stats") {
  using Pair = std::pair<std::vector<std::string>, std::vector<std::string>>;
  auto of_len = [](std::size_t integrand_len, std::size_t integral_len) {
    // integrand: a left comb of adds with x leaves (odd lengths)
    auto comb = [](std::size_t len) {
      std::vector<std::string> v;
      std::size_t adds = (len - 1) / 2;
      for (std::size_t i = 0; i < adds; ++i) v.push_back("add");
      for (std::size_t i = 0; i + adds < len; ++i) v.push_back("x");
      return v;
    };
    return Pair{comb(integrand_len), comb(integral_len)};
  };
  {
    DatasetStats st = dataset_stats({of_len(5, 12)}, 10);
    CHECK(st.close_fraction == 1.0);  // |5 - 12| = 7 < 10
  }
  {
    DatasetStats st = dataset_stats({of_len(5, 20)}, 10);
    CHECK(st.close_fraction == 0.0);
  }
  {
    // two records identical after CONST substitution
    Pair a{toks({"mul", "2", "x"}), toks({"x"})};
    Pair b{toks({"mul", "7", "x"}), toks({"x"})};
    DatasetStats st = dataset_stats({a, b}, 10);
    CHECK(st.unique_mod_const_fraction == 0.5);
  }
  {
    // permutation invariance
    std::vector<Pair> recs{of_len(5, 12), of_len(3, 21), {toks({"mul", "2", "x"}), toks({"x"})}};
    DatasetStats st1 = dataset_stats(recs, 10);
    std::swap(recs[0], recs[2]);
    DatasetStats st2 = dataset_stats(recs, 10);
    CHECK(st1.close_fraction == st2.close_fraction);
    CHECK(st1.unique_mod_const_fraction == st2.unique_mod_const_fraction);
    CHECK(st1.integrand_length_hist == st2.integrand_length_hist);
  }
  CHECK_THROWS_AS(dataset_stats({}, 10), std::invalid_argument);
}

TEST_CASE("record field order is fixed") {
  DatasetRecord rec;
  rec.id = 7;
  rec.method = "poly";
  rec.tower = "log(x)";
  rec.seed = 99;
  rec.integrand_infix = "1/x";
  rec.integral_infix = "ln(x)";
  rec.integrand_prefix = {"div", "1", "x"};
  rec.integral_prefix = {"ln", "x"};
  rec.verified = true;
  std::ostringstream os;
  write_record(os, rec);
  std::string line = os.str();
  CHECK(line.back() == '\n');
  const char* keys[] = {"\"id\"",              "\"method\"",          "\"tower\"",
                        "\"seed\"",            "\"integrand_infix\"", "\"integral_infix\"",
                        "\"integrand_prefix\"", "\"integral_prefix\"", "\"verified\""};
  std::size_t pos = 0;
  for (const char* k : keys) {
    std::size_t at = line.find(k);
    REQUIRE(at != std::string::npos);
    CHECK(at >= pos);
    pos = at;
  }
  std::istringstream is(line);
  auto loads = read_records(is);
  REQUIRE(loads.size() == 1);
  REQUIRE(loads[0].record.has_value());
  CHECK(loads[0].record->seed == 99);
  CHECK(loads[0].record->integral_prefix == std::vector<std::string>{"ln", "x"});
}

TEST_CASE("tower descriptions parse back") {
  Tower t;
  t.push(ExtKind::Log, FieldElem::one() / FieldElem::var_x());
  t.push(ExtKind::Exp,
         FieldElem::var_x() * FieldElem::var_x() + FieldElem::from_int(1));
  std::string desc = tower_description(t);
  CHECK(desc == "log(1/x);exp(x^2 + 1)");
  Tower back = parse_tower_description(desc);
  REQUIRE(back.height() == 2);
  CHECK(back.ext(1).kind == ExtKind::Log);
  CHECK(back.ext(1).arg == t.ext(1).arg);
  CHECK(back.ext(2).kind == ExtKind::Exp);
  CHECK(back.ext(2).arg == t.ext(2).arg);

  CHECK_THROWS_AS(parse_tower_description("sin(x)"), std::invalid_argument);
}
