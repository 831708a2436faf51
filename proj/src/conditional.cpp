#include "belief/conditional.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "belief/errors.hpp"

namespace blc {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += "; ";
    out += part;
  }
  return out;
}

// Raw uncertainty of the general quotient formula, used only to pick the
// nearest legal point when the quotient has to be clipped.
double raw_quotient_uncertainty(const Opinion& num, const Opinion& den) {
  const double adiff = den.a - num.a;
  const double rest = 1.0 - den.d;
  if (adiff <= 0.0 || rest <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double eden = expectation(den);
  if (eden <= 0.0) return std::numeric_limits<double>::infinity();
  return den.a * (1.0 - num.d) / (adiff * rest) -
         den.a * expectation(num) / (adiff * eden);
}

Opinion bayes_quotient(const Opinion& prior, const Opinion& prior_not,
                       const Opinion& lik, const Opinion& lik_not,
                       const LimitParams& lp, const char* label,
                       std::vector<std::string>& diagnostics) {
  const Opinion num = multiply(prior, lik, lp);
  const Opinion den = add(num, multiply(prior_not, lik_not, lp));
  const double eden = expectation(den);
  if (eden <= 0.0) {
    fail(ErrorKind::ZeroDenominator,
         std::string("the denominator opinion of the ") + label +
             " reverse conditional has expectation 0");
  }
  const Divisibility check = divisibility_check(num, den);
  if (check.ok) {
    return divide(num, den, lp);
  }
  diagnostics.push_back(std::string("reverse conditional (") + label +
                        "): quotient clipped onto the triangle (" +
                        joined(check.failures) + ")");
  const double e = clamp01(expectation(num) / eden);
  const double a = den.a > 0.0 ? clamp01(num.a / den.a) : 0.0;
  return clip(e, a, raw_quotient_uncertainty(num, den));
}

}  // namespace

Opinion deduce(const Opinion& wx, const ConditionalPair& cond,
               const LimitParams& lp) {
  return add(multiply(wx, cond.pos, lp), multiply(negate(wx), cond.neg, lp));
}

ReverseConditionals reverse_conditionals(const Opinion& cx_pos,
                                         const Opinion& cx_neg, double a_y,
                                         const LimitParams& lp) {
  if (!(a_y > 0.0 && a_y < 1.0)) {
    fail(ErrorKind::DegenerateBaseRate,
         "the consequent base rate must lie strictly inside (0,1)");
  }
  const Opinion prior{0.0, 0.0, 1.0, a_y};
  const Opinion prior_not = negate(prior);
  ReverseConditionals out;
  out.pair.pos = bayes_quotient(prior, prior_not, cx_pos, cx_neg, lp, "pos",
                                out.diagnostics);
  out.pair.neg = bayes_quotient(prior, prior_not, negate(cx_pos),
                                negate(cx_neg), lp, "neg", out.diagnostics);
  return out;
}

Abduced abduce(const Opinion& wx, const Opinion& cx_pos, const Opinion& cx_neg,
               double a_y, const LimitParams& lp) {
  ReverseConditionals reversed = reverse_conditionals(cx_pos, cx_neg, a_y, lp);
  return Abduced{deduce(wx, reversed.pair, lp),
                 std::move(reversed.diagnostics)};
}

}  // namespace blc
