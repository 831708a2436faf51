#include "belief/expr.hpp"

#include <cmath>
#include <functional>

#include "doctest.h"

#include "belief/errors.hpp"
#include "belief/oracle.hpp"
#include "test_support.hpp"

using namespace blc;
using blc::test::check_close;

namespace {

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalRangeError;
}

Opinion eval_str(const std::string& text, const Env& env = {},
                 const LimitParams& lp = {}) {
  return evaluate_program(parse_program(text), env, lp).value;
}

}  // namespace

TEST_CASE("tokenize") {
  const auto tokens = tokenize("!(0.7,0.1,0.2,0.5)");
  REQUIRE(tokens.size() == 11);
  CHECK(tokens[0].kind == TokenKind::Bang);
  CHECK(tokens[1].kind == TokenKind::LParen);
  CHECK(tokens[2].kind == TokenKind::Number);
  CHECK(tokens[2].lexeme == "0.7");
  CHECK(tokens.back().kind == TokenKind::End);

  const auto idents = tokenize("a+b");
  REQUIRE(idents.size() == 4);
  CHECK(idents[0].kind == TokenKind::Ident);
  CHECK(idents[1].kind == TokenKind::Plus);
  CHECK(idents[2].lexeme == "b");

  // numbers take fractions and exponents by maximal munch
  const auto sci = tokenize("1.5e-3");
  CHECK(sci[0].lexeme == "1.5e-3");

  try {
    tokenize("0.7 @ 0.1");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LexError);
    CHECK(std::string(e.what()).find("1:5") != std::string::npos);
  }
}

TEST_CASE("token positions are 1-based line:column") {
  const auto tokens = tokenize("a\n  b");
  CHECK(tokens[0].line == 1);
  CHECK(tokens[0].col == 1);
  CHECK(tokens[1].line == 2);
  CHECK(tokens[1].col == 3);
}

TEST_CASE("precedence and associativity") {
  // | binds looser than *
  const ExprPtr mixed = parse_expression("a*b|c");
  const auto& top = std::get<Binary>(mixed->node);
  CHECK(top.op == BinaryOp::Comult);
  CHECK(std::get<Binary>(top.lhs->node).op == BinaryOp::Mult);

  // prefix ! binds tightest
  const ExprPtr bang = parse_expression("!a*b");
  const auto& mult = std::get<Binary>(bang->node);
  CHECK(mult.op == BinaryOp::Mult);
  CHECK(std::holds_alternative<Not>(mult.lhs->node));

  // left associativity
  const ExprPtr chain = parse_expression("a-b-c");
  const auto& outer = std::get<Binary>(chain->node);
  CHECK(outer.op == BinaryOp::Sub);
  CHECK(std::get<Binary>(outer.lhs->node).op == BinaryOp::Sub);
}

TEST_CASE("parenthesis disambiguation") {
  // four comma-separated numbers in parens is an opinion literal
  CHECK(std::holds_alternative<OpinionLit>(
      parse_expression("(0.7,0.1,0.2,0.5)")->node));
  // anything else groups
  CHECK(std::holds_alternative<Binary>(parse_expression("(a+b)")->node));
  CHECK(std::holds_alternative<OpinionLit>(
      parse_expression("((0.7,0.1,0.2,0.5))")->node));

  // a three-component tuple is a parse error
  CHECK(kind_of([] { parse_expression("(0.7,0.1,0.2)"); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("grammar fixtures parse and format round trip") {
  // at least 30 strings covering every operator, precedence and both
  // parenthesis readings
  const char* fixtures[] = {
      "(0.7,0.1,0.2,0.5)",
      "(0,0,1,0.5)",
      "(1,0,0,0.3)",
      "beta(7,1,0.5)",
      "beta(0,0,0.5)",
      "pv(0.8,0.2,0.5)",
      "x",
      "!x",
      "!!x",
      "x+y",
      "x-y",
      "x*y",
      "x/y",
      "x|y",
      "x%y",
      "x*y|z",
      "x|y*z",
      "x+y*z",
      "x*(y+z)",
      "(x+y)*z",
      "x-(y-z)",
      "x-y-z",
      "x/y/z",
      "x%y%z",
      "!x*!y",
      "!(x*y)",
      "!(0.7,0.1,0.2,0.5)",
      "x*beta(7,1,0.5)",
      "deduce(x,y,z)",
      "abduce(x,y,z,0.5)",
      "deduce(x*y,!z,(0.5,0.3,0.2,0.4))",
      "x+y|z*!w",
      "beta(1.5e1,2,0.25)",
      "(0.5,0.25,0.25,0.125)|pv(0.5,0.5,0.5)",
  };
  for (const char* text : fixtures) {
    CAPTURE(text);
    const ExprPtr parsed = parse_expression(text);
    const std::string printed = format(*parsed);
    const ExprPtr again = parse_expression(printed);
    CHECK(structurally_equal(*parsed, *again));
    // canonical text is a fixpoint
    CHECK(format(*again) == printed);
  }
}

TEST_CASE("programs with let bindings format and reparse") {
  const Program program =
      parse_program("let x = beta(7,1,0.5); let y = !x; x*y");
  const std::string printed = format(program);
  CHECK(printed == "let x = beta(7,1,0.5); let y = !x; x*y");
  const Program again = parse_program(printed);
  REQUIRE(again.lets.size() == 2);
  CHECK(again.lets[0].first == "x");
  CHECK(structurally_equal(*again.body, *program.body));
}

TEST_CASE("format emits minimal parentheses") {
  CHECK(format(*parse_expression("a * b + c")) == "a*b+c");
  CHECK(format(*parse_expression("a * (b + c)")) == "a*(b+c)");
  CHECK(format(*parse_expression("a - (b - c)")) == "a-(b-c)");
  CHECK(format(*parse_expression("(a - b) - c")) == "a-b-c");
  CHECK(format(*parse_expression("!(a + b)")) == "!(a+b)");
  CHECK(format(Opinion{0.7, 0.1, 0.2, 0.5}) == "(0.7,0.1,0.2,0.5)");
}

TEST_CASE("parse errors carry positions") {
  const char* bad[] = {
      "(0.7,0.1,0.2)",       // not an opinion literal, not a grouping
      "x+",                  // missing operand
      "deduce(x,y)",         // wrong arity
      "abduce(x,y,z)",       // missing scalar
      "beta(1,2)",           // wrong literal arity
      "let = x; x",          // missing name
      "let x x; x",          // missing equals
      "x y",                 // trailing garbage
      ")",                   // stray paren
      "0.5",                 // bare number is not a belief value
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK(kind_of([&] { parse_program(text); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("random byte soup never escapes LexError/ParseError") {
  Rng rng(149);
  const std::string alphabet = "()+-*/|%!,;=. 0123456789abeltuvxyz\"@\n_";
  for (int i = 0; i < 3000; ++i) {
    std::string soup;
    const int len = 1 + static_cast<int>(rng.uniform() * 24);
    for (int k = 0; k < len; ++k) {
      soup += alphabet[static_cast<std::size_t>(rng.uniform() *
                                                alphabet.size())];
    }
    try {
      parse_program(soup);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::LexError ||
             e.kind() == ErrorKind::ParseError));
    }
  }
}

TEST_CASE("opinions round trip through their canonical text") {
  Rng rng(151);
  for (int i = 0; i < 500; ++i) {
    const Opinion w = random_opinion(rng);
    const ExprPtr parsed = parse_expression(format(w));
    REQUIRE(std::holds_alternative<OpinionLit>(parsed->node));
    const Opinion back = evaluate(*parsed, {}).value;
    // 12 significant digits of canonical text
    CHECK(std::fabs(back.b - w.b) <= 1e-12);
    CHECK(std::fabs(back.d - w.d) <= 1e-12);
    CHECK(std::fabs(back.u - w.u) <= 1e-12);
    CHECK(std::fabs(back.a - w.a) <= 1e-12);
  }
}

TEST_CASE("evaluate") {
  check_close(eval_str("!(0.7,0.1,0.2,0.5)"), Opinion{0.1, 0.7, 0.2, 0.5},
              1e-15);
  check_close(eval_str("(0.7,0.1,0.2,0.5)*(0.5,0.3,0.2,0.4)"),
              Opinion{0.4225, 0.37, 0.2075, 0.2}, 1e-12);
  check_close(eval_str("beta(7,1,0.5)"), Opinion{0.7, 0.1, 0.2, 0.5}, 1e-15);
  check_close(eval_str("pv(0.8,0.2,0.5)"), Opinion{0.7, 0.1, 0.2, 0.5}, 1e-15);

  Env env;
  env["x"] = make_opinion(0.7, 0.1, 0.2, 0.5);
  env["y"] = make_opinion(0.5, 0.3, 0.2, 0.4);
  check_close(eval_str("x*y", env), Opinion{0.4225, 0.37, 0.2075, 0.2}, 1e-12);

  // let bindings extend the environment in order
  check_close(eval_str("let x = (0.7,0.1,0.2,0.5); let y = x*x; y/x"),
              Opinion{0.7, 0.1, 0.2, 0.5}, 1e-9);

  // deduce / abduce surface through the language
  const Opinion via_call = eval_str(
      "deduce((1,0,0,0.5),(0.9,0.1,0,0.5),(0.2,0.8,0,0.5))");
  CHECK(std::fabs(expectation(via_call) - 0.9) <= 1e-12);
}

TEST_CASE("evaluation errors carry the span of the failing node") {
  try {
    eval_str("x");
    CHECK(false);
  } catch (const EvalError& e) {
    CHECK(e.kind() == ErrorKind::UnboundVariable);
    CHECK(e.span().col == 1);
  }

  try {
    eval_str("!(0.5,0.5,0.2,0.5)");
    CHECK(false);
  } catch (const EvalError& e) {
    CHECK(e.kind() == ErrorKind::AdditivityViolation);
    CHECK(e.span().col == 2);  // the literal, not the negation
  }

  Env env;
  env["x"] = make_opinion(0.7, 0.1, 0.2, 0.6);
  env["y"] = make_opinion(0.5, 0.3, 0.2, 0.5);
  try {
    evaluate(*parse_expression("x+y"), env);
    CHECK(false);
  } catch (const EvalError& e) {
    CHECK(e.kind() == ErrorKind::BaseRateOverflow);
    CHECK(std::string(e.what()).find("1:1-1:4") != std::string::npos);
  }
}

TEST_CASE("limit parameters flow from evaluation to the operators") {
  Env env;
  env["t"] = make_opinion(0.6, 0.3, 0.1, 1.0);
  env["o"] = make_opinion(1, 0, 0, 1.0);
  CHECK(kind_of([&] { eval_str("t*o", env); }) == ErrorKind::MissingLimitParam);
  LimitParams lp;
  lp.eta = 1.0;
  const Opinion product = eval_str("t*o", env, lp);
  CHECK(product.d == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("end-to-end homomorphism on random trees") {
  Rng rng(137);
  Env env;
  env["p"] = make_opinion(0.7, 0.1, 0.2, 0.5);
  env["q"] = make_opinion(0.5, 0.3, 0.2, 0.4);
  env["r"] = make_opinion(0.2, 0.5, 0.3, 0.6);
  env["s"] = make_opinion(0.4, 0.4, 0.2, 0.3);

  // random 3-level expression trees; division appears as (A*B)/B so it stays
  // inside its domain
  const std::function<std::string(int)> build = [&](int depth) -> std::string {
    const double pick = rng.uniform();
    if (depth == 0 || pick < 0.2) {
      const char* names[4] = {"p", "q", "r", "s"};
      return names[static_cast<int>(rng.uniform() * 4)];
    }
    const std::string lhs = build(depth - 1);
    const std::string rhs = build(depth - 1);
    if (pick < 0.4) return "(" + lhs + "*" + rhs + ")";
    if (pick < 0.6) return "(" + lhs + "|" + rhs + ")";
    if (pick < 0.7) return "!" + lhs;
    if (pick < 0.8) return "((" + lhs + "*" + rhs + ")/" + rhs + ")";
    if (pick < 0.9) return "((" + lhs + "|" + rhs + ")%" + rhs + ")";
    return "deduce(" + lhs + "," + rhs + "," + build(depth - 1) + ")";
  };

  int checked = 0;
  for (int i = 0; i < 20000 && checked < 10000; ++i) {
    const std::string text = build(3);
    const ExprPtr expr = parse_expression(text);
    HomomorphismReport report;
    try {
      report = check_homomorphism(*expr, env, {}, 1e-6);
    } catch (const Error&) {
      continue;  // tree landed outside some operator's domain
    }
    CAPTURE(text);
    CHECK(report.pass);
    ++checked;
  }
  CHECK(checked == 10000);
}
