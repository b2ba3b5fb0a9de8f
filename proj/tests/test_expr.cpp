#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "topspin/errors.hpp"
#include "topspin/expr.hpp"

using namespace topspin;
using Op = ExprAst::Op;

namespace {

const std::vector<std::string> kC = {"c"};

ExprAst sqrt_one_minus_s() {
  ExprAst a;
  const int one = a.constant(1.0);
  const int s = a.variable();
  a.unary(Op::Sqrt, a.binary(Op::Sub, one, s));
  return a;
}

/// Random tree over the full node set, constants kept non-negative so that
/// printing never has to invent a negation node.
int grow(ExprAst& a, std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 2);
  switch (pick(rng)) {
    case 0: return a.constant(std::uniform_real_distribution<double>(0.0, 1e3)(rng));
    case 1: return a.variable();
    case 2: return a.parameter("c");
    case 3: return a.unary(Op::Negate, grow(a, rng, depth - 1));
    case 4: return a.unary(Op::Sqrt, grow(a, rng, depth - 1));
    default: {
      static constexpr Op ops[] = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow};
      const Op op = ops[std::uniform_int_distribution<int>(0, 4)(rng)];
      const int lhs = grow(a, rng, depth - 1);
      const int rhs = grow(a, rng, depth - 1);
      return a.binary(op, lhs, rhs);
    }
  }
}

std::size_t error_position(const std::string& src, std::span<const std::string> params = {}) {
  try {
    parse_expression(src, params);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error for '" << src << "'");
  return 0;
}

}  // namespace

TEST_CASE("grammar derivations") {
  CHECK(parse_expression("sqrt(1-s)") == sqrt_one_minus_s());
  CHECK(parse_expression("  sqrt ( 1 - s ) ") == sqrt_one_minus_s());

  ExprAst want;
  const int one = want.constant(1.0);
  const int c = want.parameter("c");
  const int one2 = want.constant(1.0);
  const int lhs = want.binary(Op::Sub, c, one2);
  const int one3 = want.constant(1.0);
  const int s = want.variable();
  const int rhs = want.binary(Op::Sub, one3, s);
  want.binary(Op::Add, one, want.binary(Op::Mul, lhs, rhs));
  CHECK(parse_expression("1+(c-1)*(1-s)", kC) == want);
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_expression("-s^2").to_string() == "(-(s^2))");
  CHECK(parse_expression("2^3^2").to_string() == "(2^(3^2))");
  CHECK(parse_expression("1-s-s").to_string() == "((1-s)-s)");
  CHECK(parse_expression("1/s*2").to_string() == "((1/s)*2)");
  CHECK(parse_expression("1+s*2").to_string() == "(1+(s*2))");
  CHECK(parse_expression("2^-1").to_string() == "(2^(-1))");
  CHECK(parse_expression("1.5e-3").node(0).value == 1.5e-3);
  CHECK(parse_expression(".5").node(0).value == 0.5);
}

TEST_CASE("syntax errors carry the offending offset") {
  CHECK(error_position("sqrt(") == 5);
  CHECK(error_position("") == 0);
  CHECK(error_position("1+") == 2);
  CHECK(error_position("(1") == 2);
  CHECK(error_position("1 2") == 2);
  CHECK(error_position("1e") == 2);
  CHECK(error_position("s $") == 2);
  CHECK(error_position("sqrt 2") == 5);
}

TEST_CASE("unknown identifiers") {
  CHECK_THROWS_AS(parse_expression("c*s"), UnknownIdentifier);
  CHECK_NOTHROW(parse_expression("c*s", kC));
  CHECK_THROWS_AS(parse_expression("exp(s)"), UnknownIdentifier);
  try {
    parse_expression("1 + k");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name() == "k");
    CHECK(e.position() == 4);
  }
  CHECK(parse_expression("c + c*s", kC).parameters() == std::vector<std::string>{"c"});
}

TEST_CASE("jet evaluation") {
  const auto ast = parse_expression("s^3 - 2*s + sqrt(1-s)/c", kC);
  const double s = 0.36;
  const Jet2 r = ast.evaluate(Jet2::variable(s), {{"c", 2.0}});
  CHECK(r.v == doctest::Approx(s * s * s - 2 * s + 0.4).epsilon(1e-15));
  CHECK(r.d == doctest::Approx(3 * s * s - 2 - 0.625 / 2).epsilon(1e-15));
  CHECK(r.dd == doctest::Approx(6 * s - 0.48828125 / 2).epsilon(1e-15));

  CHECK_THROWS_AS(ast.evaluate(Jet2::variable(s), {}), EvaluationError);
  CHECK_THROWS_AS(parse_expression("sqrt(s-1)").evaluate(Jet2::variable(0.5), {}), EvaluationError);
  CHECK_THROWS_AS(parse_expression("1/s").evaluate(Jet2::variable(0.0), {}), EvaluationError);
  CHECK_THROWS_AS(parse_expression("(s-1)^0.5").evaluate(Jet2::variable(0.5), {}), EvaluationError);
  // Integer powers of a negative base are fine.
  CHECK(parse_expression("(s-1)^3").evaluate(Jet2::variable(0.5), {}).dd == doctest::Approx(-3.0));
  // s-dependent exponent: d/ds 2^s = ln2 2^s.
  CHECK(parse_expression("2^s").evaluate(Jet2::variable(1.0), {}).d == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("property: print then parse is the identity on trees") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    ExprAst a;
    grow(a, rng, 5);
    const std::string text = a.to_string();
    const ExprAst b = parse_expression(text, kC);
    REQUIRE_MESSAGE(a == b, text);
  }
}
