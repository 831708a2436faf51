#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "belief/conditional.hpp"
#include "belief/errors.hpp"
#include "belief/operators.hpp"

namespace blc {

// ---- lexer ------------------------------------------------------------------

enum class TokenKind {
  Number,
  LParen,
  RParen,
  Comma,
  Plus,
  Minus,
  Star,
  Slash,
  Bar,
  Percent,
  Bang,
  Ident,
  Let,
  Equals,
  Semicolon,
  End,
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  int line = 1;  // 1-based
  int col = 1;   // 1-based
};

/// Maximal-munch lexing; numbers are unsigned decimals with optional fraction
/// and exponent. Unknown characters raise LexError with their position.
std::vector<Token> tokenize(std::string_view input);

// ---- AST ---------------------------------------------------------------------

struct Span {
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
  std::string str() const;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct OpinionLit {
  double b, d, u, a;
};
struct BetaLit {
  double r, s, a;
};
struct PvLit {
  double e, u, a;
};
struct Var {
  std::string name;
};
struct Not {
  ExprPtr operand;
};
enum class BinaryOp { Add, Sub, Mult, Div, Comult, Codiv };
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
enum class CallKind { Deduce, Abduce };
struct Call {
  CallKind kind;
  std::vector<ExprPtr> args;     // deduce: 3, abduce: 3
  std::optional<double> scalar;  // abduce's trailing base rate
};

struct Expr {
  Span span;
  std::variant<OpinionLit, BetaLit, PvLit, Var, Not, Binary, Call> node;
};

/// Leading let-bindings followed by the expression to evaluate.
struct Program {
  std::vector<std::pair<std::string, ExprPtr>> lets;
  ExprPtr body;
};

/// Grammar, loosest binding first: + - over | % over * / over prefix !.
/// All binary operators are left-associative. "(n,n,n,n)" is an opinion
/// literal, "beta(n,n,n)" and "pv(n,n,n)" evidence and probability-vector
/// literals; a parenthesis not opening a four-number tuple groups.
Program parse_program(std::string_view input);
ExprPtr parse_expression(std::string_view input);

// ---- evaluation ----------------------------------------------------------------

using Env = std::map<std::string, Opinion, std::less<>>;

/// Domain failures during evaluation, tagged with the source span of the
/// exact node that failed.
class EvalError : public Error {
 public:
  EvalError(ErrorKind kind, Span span, const std::string& message)
      : Error(kind, "at " + span.str() + ": " + message), span_(span) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

struct EvalResult {
  Opinion value;
  std::vector<std::string> diagnostics;
};

EvalResult evaluate(const Expr& expr, const Env& env,
                    const LimitParams& lp = {});
EvalResult evaluate_program(const Program& program, Env env,
                            const LimitParams& lp = {});

// ---- formatting -----------------------------------------------------------------

/// Up to 12 significant digits, trailing zeros trimmed.
std::string format_real(double value);

/// Canonical textual form "(b,d,u,a)".
std::string format(const Opinion& w);

/// Canonical text with minimal parentheses; parsing it back yields a
/// structurally equal tree.
std::string format(const Expr& expr);
std::string format(const Program& program);

/// Structural equality modulo spans; numbers compare by canonical text.
bool structurally_equal(const Expr& lhs, const Expr& rhs);

}  // namespace blc
