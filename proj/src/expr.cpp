#include "belief/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "belief/beta.hpp"

namespace blc {

std::string Span::str() const {
  const auto point = [](int l, int c) {
    return std::to_string(l) + ":" + std::to_string(c);
  };
  if (line == end_line && col == end_col) return point(line, col);
  return point(line, col) + "-" + point(end_line, end_col);
}

// ---- lexer ------------------------------------------------------------------

std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  const auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (input[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < input.size()) {
    const char c = input[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    const int tok_line = line;
    const int tok_col = col;
    const auto push = [&](TokenKind kind, std::size_t len) {
      tokens.push_back(
          Token{kind, std::string(input.substr(i, len)), tok_line, tok_col});
      advance(len);
    };
    switch (c) {
      case '(': push(TokenKind::LParen, 1); continue;
      case ')': push(TokenKind::RParen, 1); continue;
      case ',': push(TokenKind::Comma, 1); continue;
      case '+': push(TokenKind::Plus, 1); continue;
      case '-': push(TokenKind::Minus, 1); continue;
      case '*': push(TokenKind::Star, 1); continue;
      case '/': push(TokenKind::Slash, 1); continue;
      case '|': push(TokenKind::Bar, 1); continue;
      case '%': push(TokenKind::Percent, 1); continue;
      case '!': push(TokenKind::Bang, 1); continue;
      case '=': push(TokenKind::Equals, 1); continue;
      case ';': push(TokenKind::Semicolon, 1); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 1;
      const auto digits_from = [&](std::size_t at) {
        std::size_t n = 0;
        while (at + n < input.size() &&
               std::isdigit(static_cast<unsigned char>(input[at + n]))) {
          ++n;
        }
        return n;
      };
      len += digits_from(i + len);
      if (i + len < input.size() && input[i + len] == '.' &&
          digits_from(i + len + 1) > 0) {
        len += 1 + digits_from(i + len + 1);
      }
      if (i + len < input.size() &&
          (input[i + len] == 'e' || input[i + len] == 'E')) {
        std::size_t exp = 1;
        if (i + len + exp < input.size() &&
            (input[i + len + exp] == '+' || input[i + len + exp] == '-')) {
          ++exp;
        }
        const std::size_t exp_digits = digits_from(i + len + exp);
        if (exp_digits > 0) len += exp + exp_digits;
      }
      push(TokenKind::Number, len);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 1;
      while (i + len < input.size() &&
             (std::isalnum(static_cast<unsigned char>(input[i + len])) ||
              input[i + len] == '_')) {
        ++len;
      }
      const std::string_view word = input.substr(i, len);
      push(word == "let" ? TokenKind::Let : TokenKind::Ident, len);
      continue;
    }
    fail(ErrorKind::LexError,
         "unexpected character '" + std::string(1, c) + "' at " +
             std::to_string(line) + ":" + std::to_string(col));
  }
  tokens.push_back(Token{TokenKind::End, "", line, col});
  return tokens;
}

// ---- parser -----------------------------------------------------------------

namespace {

const char* token_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Number: return "number";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Bar: return "'|'";
    case TokenKind::Percent: return "'%'";
    case TokenKind::Bang: return "'!'";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Let: return "'let'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

Span token_span(const Token& token) {
  const int len = token.kind == TokenKind::End
                      ? 0
                      : static_cast<int>(token.lexeme.size());
  return Span{token.line, token.col, token.line, token.col + len};
}

Span merge(Span a, Span b) {
  return Span{a.line, a.col, b.end_line, b.end_col};
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program program() {
    Program result;
    while (peek().kind == TokenKind::Let) {
      next();
      const Token name = expect(TokenKind::Ident);
      expect(TokenKind::Equals);
      ExprPtr value = expression();
      expect(TokenKind::Semicolon);
      result.lets.emplace_back(name.lexeme, std::move(value));
    }
    result.body = expression();
    expect(TokenKind::End);
    return result;
  }

  ExprPtr expression() {  // + -
    ExprPtr lhs = term();
    for (;;) {
      const TokenKind kind = peek().kind;
      if (kind != TokenKind::Plus && kind != TokenKind::Minus) return lhs;
      next();
      ExprPtr rhs = term();
      lhs = binary(kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                   std::move(lhs), std::move(rhs));
    }
  }

 private:
  ExprPtr term() {  // | %
    ExprPtr lhs = factor();
    for (;;) {
      const TokenKind kind = peek().kind;
      if (kind != TokenKind::Bar && kind != TokenKind::Percent) return lhs;
      next();
      ExprPtr rhs = factor();
      lhs = binary(kind == TokenKind::Bar ? BinaryOp::Comult : BinaryOp::Codiv,
                   std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr factor() {  // * /
    ExprPtr lhs = unary();
    for (;;) {
      const TokenKind kind = peek().kind;
      if (kind != TokenKind::Star && kind != TokenKind::Slash) return lhs;
      next();
      ExprPtr rhs = unary();
      lhs = binary(kind == TokenKind::Star ? BinaryOp::Mult : BinaryOp::Div,
                   std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr unary() {
    if (peek().kind == TokenKind::Bang) {
      const Token bang = next();
      ExprPtr operand = unary();
      const Span span = merge(token_span(bang), operand->span);
      return make(span, Not{std::move(operand)});
    }
    return atom();
  }

  ExprPtr atom() {
    const Token& token = peek();
    switch (token.kind) {
      case TokenKind::LParen: {
        if (is_opinion_literal()) return opinion_literal();
        next();
        ExprPtr inner = expression();
        expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::Ident: {
        if (peek(1).kind == TokenKind::LParen) {
          if (token.lexeme == "beta" || token.lexeme == "pv") {
            return evidence_literal();
          }
          if (token.lexeme == "deduce" || token.lexeme == "abduce") {
            return call();
          }
          parse_fail("'" + token.lexeme + "' is not a callable name", token);
        }
        const Token name = next();
        return make(token_span(name), Var{name.lexeme});
      }
      default:
        parse_fail("expected a value, variable, '(' or '!'", token);
    }
  }

  bool is_opinion_literal() const {
    // '(' Number ',' Number ',' Number ',' Number ')'
    static constexpr TokenKind pattern[9] = {
        TokenKind::LParen, TokenKind::Number, TokenKind::Comma,
        TokenKind::Number, TokenKind::Comma,  TokenKind::Number,
        TokenKind::Comma,  TokenKind::Number, TokenKind::RParen};
    for (int k = 0; k < 9; ++k) {
      if (peek(k).kind != pattern[k]) return false;
    }
    return true;
  }

  ExprPtr opinion_literal() {
    const Token open = expect(TokenKind::LParen);
    const double b = number();
    expect(TokenKind::Comma);
    const double d = number();
    expect(TokenKind::Comma);
    const double u = number();
    expect(TokenKind::Comma);
    const double a = number();
    const Token close = expect(TokenKind::RParen);
    return make(merge(token_span(open), token_span(close)),
                OpinionLit{b, d, u, a});
  }

  ExprPtr evidence_literal() {
    const Token name = expect(TokenKind::Ident);
    expect(TokenKind::LParen);
    const double first = number();
    expect(TokenKind::Comma);
    const double second = number();
    expect(TokenKind::Comma);
    const double third = number();
    const Token close = expect(TokenKind::RParen);
    const Span span = merge(token_span(name), token_span(close));
    if (name.lexeme == "beta") return make(span, BetaLit{first, second, third});
    return make(span, PvLit{first, second, third});
  }

  ExprPtr call() {
    const Token name = expect(TokenKind::Ident);
    const CallKind kind =
        name.lexeme == "deduce" ? CallKind::Deduce : CallKind::Abduce;
    expect(TokenKind::LParen);
    Call node{kind, {}, std::nullopt};
    node.args.push_back(expression());
    expect(TokenKind::Comma);
    node.args.push_back(expression());
    expect(TokenKind::Comma);
    node.args.push_back(expression());
    if (kind == CallKind::Abduce) {
      expect(TokenKind::Comma);
      node.scalar = number();
    }
    const Token close = expect(TokenKind::RParen);
    return make(merge(token_span(name), token_span(close)), std::move(node));
  }

  double number() {
    const Token token = expect(TokenKind::Number);
    return std::strtod(token.lexeme.c_str(), nullptr);
  }

  ExprPtr make(Span span,
               std::variant<OpinionLit, BetaLit, PvLit, Var, Not, Binary, Call>
                   node) const {
    auto expr = std::make_unique<Expr>();
    expr->span = span;
    expr->node = std::move(node);
    return expr;
  }

  ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) const {
    const Span span = merge(lhs->span, rhs->span);
    return make(span, Binary{op, std::move(lhs), std::move(rhs)});
  }

  const Token& peek(int offset = 0) const {
    const std::size_t at = pos_ + static_cast<std::size_t>(offset);
    return at < tokens_.size() ? tokens_[at] : tokens_.back();
  }

  Token next() { return tokens_[pos_++]; }

  Token expect(TokenKind kind) {
    if (peek().kind != kind) {
      parse_fail(std::string("expected ") + token_name(kind), peek());
    }
    return next();
  }

  [[noreturn]] void parse_fail(const std::string& message,
                               const Token& at) const {
    fail(ErrorKind::ParseError, message + ", found " + token_name(at.kind) +
                                    " at " + std::to_string(at.line) + ":" +
                                    std::to_string(at.col));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view input) {
  Parser parser(tokenize(input));
  return parser.program();
}

ExprPtr parse_expression(std::string_view input) {
  Program program = parse_program(input);
  if (!program.lets.empty()) {
    fail(ErrorKind::ParseError, "let bindings are not allowed here");
  }
  return std::move(program.body);
}

// ---- evaluation -----------------------------------------------------------------

namespace {

struct Evaluator {
  const Env& env;
  const LimitParams& lp;
  std::vector<std::string>& diagnostics;

  Opinion eval(const Expr& expr) {
    return std::visit([&](const auto& node) { return visit(expr, node); },
                      expr.node);
  }

  template <typename F>
  Opinion guarded(const Expr& expr, F&& body) {
    try {
      return body();
    } catch (const EvalError&) {
      throw;  // keep the innermost span
    } catch (const Error& error) {
      throw EvalError(error.kind(), expr.span, error.what());
    }
  }

  Opinion visit(const Expr& expr, const OpinionLit& lit) {
    return guarded(expr,
                   [&] { return make_opinion(lit.b, lit.d, lit.u, lit.a); });
  }

  Opinion visit(const Expr& expr, const BetaLit& lit) {
    return guarded(expr, [&] {
      return beta_to_opinion(make_augmented_beta(lit.r, lit.s, lit.a));
    });
  }

  Opinion visit(const Expr& expr, const PvLit& lit) {
    return guarded(expr, [&] {
      return from_pv(BasicProbabilityVector{lit.e, lit.u, lit.a});
    });
  }

  Opinion visit(const Expr& expr, const Var& var) {
    const auto it = env.find(var.name);
    if (it == env.end()) {
      throw EvalError(ErrorKind::UnboundVariable, expr.span,
                      "variable '" + var.name + "' is not bound");
    }
    return it->second;
  }

  Opinion visit(const Expr& expr, const Not& node) {
    const Opinion operand = eval(*node.operand);
    return guarded(expr, [&] { return negate(operand); });
  }

  Opinion visit(const Expr& expr, const Binary& node) {
    const Opinion lhs = eval(*node.lhs);
    const Opinion rhs = eval(*node.rhs);
    return guarded(expr, [&] {
      switch (node.op) {
        case BinaryOp::Add: return add(lhs, rhs);
        case BinaryOp::Sub: return subtract(lhs, rhs);
        case BinaryOp::Mult: return multiply(lhs, rhs, lp);
        case BinaryOp::Div: return divide(lhs, rhs, lp);
        case BinaryOp::Comult: return comultiply(lhs, rhs, lp);
        case BinaryOp::Codiv: return codivide(lhs, rhs, lp);
      }
      fail(ErrorKind::InternalRangeError, "unreachable operator");
    });
  }

  Opinion visit(const Expr& expr, const Call& node) {
    const Opinion first = eval(*node.args[0]);
    const Opinion second = eval(*node.args[1]);
    const Opinion third = eval(*node.args[2]);
    return guarded(expr, [&]() -> Opinion {
      if (node.kind == CallKind::Deduce) {
        return deduce(first, ConditionalPair{second, third}, lp);
      }
      Abduced result = abduce(first, second, third, *node.scalar, lp);
      for (auto& line : result.diagnostics) {
        diagnostics.push_back(std::move(line));
      }
      return result.value;
    });
  }
};

}  // namespace

EvalResult evaluate(const Expr& expr, const Env& env, const LimitParams& lp) {
  EvalResult result;
  Evaluator evaluator{env, lp, result.diagnostics};
  result.value = evaluator.eval(expr);
  return result;
}

EvalResult evaluate_program(const Program& program, Env env,
                            const LimitParams& lp) {
  EvalResult result;
  for (const auto& [name, value] : program.lets) {
    Evaluator evaluator{env, lp, result.diagnostics};
    env[name] = evaluator.eval(*value);
  }
  Evaluator evaluator{env, lp, result.diagnostics};
  result.value = evaluator.eval(*program.body);
  return result;
}

// ---- formatting -----------------------------------------------------------------

std::string format_real(double value) {
  if (value == 0.0) return "0";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string format(const Opinion& w) {
  return "(" + format_real(w.b) + "," + format_real(w.d) + "," +
         format_real(w.u) + "," + format_real(w.a) + ")";
}

namespace {

int precedence(const Expr& expr) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Binary>) {
          switch (node.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
            case BinaryOp::Comult:
            case BinaryOp::Codiv: return 2;
            case BinaryOp::Mult:
            case BinaryOp::Div: return 3;
          }
        }
        if constexpr (std::is_same_v<T, Not>) return 4;
        return 5;
      },
      expr.node);
}

const char* op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mult: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Comult: return "|";
    case BinaryOp::Codiv: return "%";
  }
  return "?";
}

void print(const Expr& expr, std::string& out) {
  const auto wrapped = [&](const Expr& child, bool strict) {
    const bool parens = strict ? precedence(child) <= precedence(expr)
                               : precedence(child) < precedence(expr);
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OpinionLit>) {
          out += "(" + format_real(node.b) + "," + format_real(node.d) + "," +
                 format_real(node.u) + "," + format_real(node.a) + ")";
        } else if constexpr (std::is_same_v<T, BetaLit>) {
          out += "beta(" + format_real(node.r) + "," + format_real(node.s) +
                 "," + format_real(node.a) + ")";
        } else if constexpr (std::is_same_v<T, PvLit>) {
          out += "pv(" + format_real(node.e) + "," + format_real(node.u) +
                 "," + format_real(node.a) + ")";
        } else if constexpr (std::is_same_v<T, Var>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, Not>) {
          out += '!';
          wrapped(*node.operand, /*strict=*/false);
        } else if constexpr (std::is_same_v<T, Binary>) {
          wrapped(*node.lhs, /*strict=*/false);
          out += op_symbol(node.op);
          wrapped(*node.rhs, /*strict=*/true);  // left-associative
        } else if constexpr (std::is_same_v<T, Call>) {
          out += node.kind == CallKind::Deduce ? "deduce(" : "abduce(";
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i > 0) out += ',';
            print(*node.args[i], out);
          }
          if (node.scalar) out += "," + format_real(*node.scalar);
          out += ')';
        }
      },
      expr.node);
}

bool same_real(double lhs, double rhs) {
  return format_real(lhs) == format_real(rhs);
}

}  // namespace

std::string format(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::string format(const Program& program) {
  std::string out;
  for (const auto& [name, value] : program.lets) {
    out += "let " + name + " = " + format(*value) + "; ";
  }
  out += format(*program.body);
  return out;
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
  if (lhs.node.index() != rhs.node.index()) return false;
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(rhs.node);
        if constexpr (std::is_same_v<T, OpinionLit>) {
          return same_real(a.b, b.b) && same_real(a.d, b.d) &&
                 same_real(a.u, b.u) && same_real(a.a, b.a);
        } else if constexpr (std::is_same_v<T, BetaLit>) {
          return same_real(a.r, b.r) && same_real(a.s, b.s) &&
                 same_real(a.a, b.a);
        } else if constexpr (std::is_same_v<T, PvLit>) {
          return same_real(a.e, b.e) && same_real(a.u, b.u) &&
                 same_real(a.a, b.a);
        } else if constexpr (std::is_same_v<T, Var>) {
          return a.name == b.name;
        } else if constexpr (std::is_same_v<T, Not>) {
          return structurally_equal(*a.operand, *b.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
                 structurally_equal(*a.rhs, *b.rhs);
        } else if constexpr (std::is_same_v<T, Call>) {
          if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
          if (a.scalar.has_value() != b.scalar.has_value()) return false;
          if (a.scalar && !same_real(*a.scalar, *b.scalar)) return false;
          for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!structurally_equal(*a.args[i], *b.args[i])) return false;
          }
          return true;
        }
      },
      lhs.node);
}

}  // namespace blc
