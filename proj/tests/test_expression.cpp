#include "certquad/expression.hpp"
#include "certquad/function_model.hpp"
#include "certquad/oracle.hpp"
#include "certquad/verify.hpp"

#include "doctest.h"

#include <cmath>

using namespace certquad;

namespace {

double at(std::string_view text, double x) { return evaluate(parse(text), x); }

double d_at(std::string_view text, double x) { return evaluate(differentiate(parse(text)), x); }

// Random trees over the full node set.  Constants are non-negative, with
// a mix of small integers and awkward doubles so the printer's shortest
// round-trip rendering is exercised.
Expr random_expr(SweepRng& rng, int depth) {
  const auto pick = rng.next() % 100;
  if (depth == 0 || pick < 20) {
    if (rng.next() % 2 == 0) return Expr::variable();
    switch (rng.next() % 4) {
      case 0: return Expr::constant(static_cast<double>(rng.next() % 10));
      case 1: return Expr::constant(rng.uniform());
      case 2: return Expr::constant(rng.uniform() * 1e12);
      default: return Expr::constant(rng.uniform() * 1e-9);
    }
  }
  if (pick < 40) {
    static constexpr ExprKind unary[] = {ExprKind::Neg, ExprKind::Exp, ExprKind::Ln, ExprKind::Abs,
                                         ExprKind::Sign};
    return Expr::unary(unary[rng.next() % 5], random_expr(rng, depth - 1));
  }
  static constexpr ExprKind binary[] = {ExprKind::Add, ExprKind::Sub, ExprKind::Mul, ExprKind::Div,
                                        ExprKind::Pow};
  const ExprKind k = binary[rng.next() % 5];
  Expr l = random_expr(rng, depth - 1);
  return Expr::binary(k, l, random_expr(rng, depth - 1));
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(at("1+2*3", 0) == 7);
  CHECK(at("(1+2)*3", 0) == 9);
  CHECK(at("8/4/2", 0) == 1);
  CHECK(at("8-4-2", 0) == 2);
  CHECK(at("2^3^2", 0) == 512);  // right associative
  CHECK(at("x^2", 3) == 9);
  // unary minus binds tighter than ^: -x^2 is (-x)^2
  CHECK(at("-x^2", 3) == 9);
  CHECK(at("-(x^2)", 3) == -9);
  CHECK(at("0-x^2", 3) == -9);
  CHECK(at("2*-x", 3) == -6);
  CHECK(at("x^-2", 2) == 0.25);
  CHECK(at(" exp( ln (x) ) ", 2.5) == doctest::Approx(2.5));
  CHECK(at("abs(x-3)", 1) == 2);
  CHECK(at("sign(x)", -4) == -1);
  CHECK(at("sign(x)", 0) == 0);
  CHECK(at("1.5e2 + .5", 0) == 150.5);
  CHECK(at("2E-1", 0) == 0.2);
}

TEST_CASE("parse errors carry the byte offset") {
  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("x+") == 2);
  CHECK(offset_of("foo(x)") == 0);
  CHECK(offset_of("x $") == 2);
  CHECK(offset_of("(x") == 2);
  CHECK(offset_of("exp x") == 4);
  CHECK(offset_of("2*sin(x)") == 2);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("x)") == 1);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(at("1/x", 0), DomainError);
  CHECK_THROWS_AS(at("ln(x)", -1), DomainError);
  CHECK_THROWS_AS(at("ln(x)", 0), DomainError);
  CHECK_THROWS_AS(at("x^0.5", -1), DomainError);
  CHECK_THROWS_AS(at("x^-1", 0), DomainError);
  CHECK_THROWS_AS(at("exp(x)", 1000), DomainError);
  CHECK(at("x^3", -2) == -8);  // integer powers of negative bases are fine
}

TEST_CASE("printing round-trips") {
  SUBCASE("corpus and hand-picked texts") {
    for (const auto& f : builtin_corpus()) {
      CHECK(parse(to_string(f.f())) == f.f());
      CHECK(parse(to_string(f.fprime())) == f.fprime());
    }
    for (std::string_view text : {"-x^2", "-(x^2)", "x^-2^3", "--x", "x-(x-x)", "(x^x)^x",
                                  "exp(-x)/(1+x)", "abs(x)^1.5", "0.1+1e+22*x"}) {
      const Expr e = parse(text);
      CHECK(parse(to_string(e)) == e);
    }
  }
  SUBCASE("1000 random trees") {
    SweepRng rng(2024);
    for (int i = 0; i < 1000; ++i) {
      const Expr e = random_expr(rng, 5);
      const std::string text = to_string(e);
      INFO(text);
      CHECK(parse(text) == e);
    }
  }
}

TEST_CASE("symbolic derivatives") {
  CHECK(d_at("x^3", 2) == 12);
  CHECK(d_at("x^x", 1) == doctest::Approx(1.0));
  CHECK(d_at("-ln(x)", 4) == -0.25);
  CHECK(d_at("1/x", 2) == -0.25);
  CHECK(d_at("exp(-x)", 0) == -1);
  CHECK(d_at("abs(x)", -3) == -1);
  CHECK(d_at("7", 1) == 0);
  CHECK(to_string(differentiate(parse("x"))) == "1");
  CHECK(to_string(differentiate(parse("3*x"))) == "3");
}

TEST_CASE("derivatives agree with central differences") {
  const std::pair<std::string_view, std::vector<double>> cases[] = {
      {"x*exp(-x)", {-1.0, 0.3, 2.0}},
      {"ln(x)^2", {0.5, 1.5, 4.0}},
      {"x^x", {0.5, 1.0, 2.0}},
      {"abs(x-1)^3", {-0.5, 0.7, 2.5}},
      {"1/(1+x^2)", {-2.0, 0.0, 1.0}},
      {"exp(x)/(x^2+1)-3*x^4", {-1.0, 0.5, 1.3}},
      {"(2*x+1)^-3", {0.25, 1.0}},
      {"x^2.5", {0.5, 2.0}},
  };
  for (const auto& [text, xs] : cases) {
    const Expr e = parse(text);
    const Expr de = differentiate(e);
    for (double x : xs) {
      INFO(text << " at " << x);
      const double fd = central_difference([&](double t) { return evaluate(e, t); }, x, 1e-5);
      CHECK(evaluate(de, x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
  for (const auto& f : builtin_corpus()) {
    for (double x : {0.4, 1.1, 2.7}) {
      const double fd = central_difference([&](double t) { return f.value(t); }, x, 1e-5);
      CHECK(f.derivative(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}
