#pragma once

#include <optional>
#include <string>
#include <vector>

#include "belief/frames.hpp"
#include "belief/opinion.hpp"

namespace blc {

/// Limit directions for the operator corner cases. eta is the limit of
/// (1-a_x)/(1-a_y) when both base rates reach 1 (multiplication); zeta the
/// limit of a_x/a_y when both reach 0 (comultiplication); gamma and delta
/// drive the equal-base-rate quotients and default to the value the general
/// formulas approach, so they rarely need to be supplied.
struct LimitParams {
  std::optional<double> eta;
  std::optional<double> zeta;
  std::optional<double> gamma;
  std::optional<double> delta;
};

/// Union of two disjoint propositions in one frame. Expectations add.
Opinion add(const Opinion& wx, const Opinion& wy);

/// Difference for y contained in x; inverse of add. Expectations subtract.
Opinion subtract(const Opinion& wx, const Opinion& wy);

/// Conjunction of independent propositions. E(x*y) = E(x)E(y).
Opinion multiply(const Opinion& wx, const Opinion& wy,
                 const LimitParams& lp = {});

/// Disjunction of independent propositions. E = E(x)+E(y)-E(x)E(y).
Opinion comultiply(const Opinion& wx, const Opinion& wy,
                   const LimitParams& lp = {});

/// Inverse of multiply: the opinion z with x = y*z. E = E(x)/E(y).
Opinion divide(const Opinion& wx, const Opinion& wy,
               const LimitParams& lp = {});

/// Inverse of comultiply. E = (E(x)-E(y))/(1-E(y)).
Opinion codivide(const Opinion& wx, const Opinion& wy,
                 const LimitParams& lp = {});

/// The quaternary product frame {(x,y), (x,~y), (~x,y), (~x,~y)} and the
/// subsets the product bba can focus on.
namespace product_frame {
const Frame& frame();
Subset xy();              // {(x,y)}
Subset x_not_y();         // {(x,~y)}
Subset not_x_y();         // {(~x,y)}
Subset not_x_not_y();     // {(~x,~y)}
Subset x_row();           // {x} x Y
Subset not_x_row();       // {~x} x Y
Subset y_col();           // X x {y}
Subset not_y_col();       // X x {~y}
Subset all();             // X x Y
Subset conjunction();     // target of multiplication
Subset disjunction();     // target of comultiplication
}  // namespace product_frame

/// Bba over the product frame induced by two opinions: nine masses, each a
/// product of one mass from each operand. Always sums to 1.
Bba cartesian_product_bba(const Opinion& wx, const Opinion& wy);

/// Whether candidate lies (within barycentric tolerance 1e-9) in the closed
/// triangle of opinions reachable as wx * wy over all wy with base rate a_y.
/// The triangle is built from the projector of wx on the opinion triangle.
bool product_range_contains(const Opinion& wx, double a_y,
                            const Opinion& candidate);

/// Geometric form of the divisibility domain: whether wx lies in the closed
/// triangle of opinions divisible by wy, built from the projector of wy and
/// lines of atomicity a_x.
bool division_range_contains(const Opinion& wy, double a_x,
                             const Opinion& wx);

struct Divisibility {
  bool ok = true;
  std::vector<std::string> failures;  // one entry per violated inequality
};

/// Checks divide's preconditions without evaluating the quotient.
Divisibility divisibility_check(const Opinion& wx, const Opinion& wy);

}  // namespace blc
