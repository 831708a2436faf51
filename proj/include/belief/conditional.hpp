#pragma once

#include <string>
#include <vector>

#include "belief/operators.hpp"

namespace blc {

/// The two conditionals feeding deduction: an opinion on the consequent given
/// the antecedent and one given its complement.
struct ConditionalPair {
  Opinion pos;  // y given x
  Opinion neg;  // y given not-x
};

/// Consequent opinion: wx * pos + not(wx) * neg. At expectation level this is
/// the law of total probability.
Opinion deduce(const Opinion& wx, const ConditionalPair& cond,
               const LimitParams& lp = {});

struct ReverseConditionals {
  ConditionalPair pair;
  /// Clip events: whenever one of the two quotients misses divide's
  /// preconditions it is projected back onto the triangle along its
  /// constant-expectation line, and the event is recorded here.
  std::vector<std::string> diagnostics;
};

/// Bayes-style inversion of conditionals on x given y into conditionals on y
/// given x, driven by the consequent base rate a_y in (0,1). The prior on y
/// enters as the vacuous opinion (0,0,1,a_y) and its complement; at
/// expectation level the result obeys
///   E(pos) = a_y E(cx_pos) / (a_y E(cx_pos) + (1-a_y) E(cx_neg)).
ReverseConditionals reverse_conditionals(const Opinion& cx_pos,
                                         const Opinion& cx_neg, double a_y,
                                         const LimitParams& lp = {});

struct Abduced {
  Opinion value;
  std::vector<std::string> diagnostics;
};

/// reverse_conditionals followed by deduce.
Abduced abduce(const Opinion& wx, const Opinion& cx_pos, const Opinion& cx_neg,
               double a_y, const LimitParams& lp = {});

}  // namespace blc
