#include "belief/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "belief/errors.hpp"

namespace blc {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

bool in_unit(double v) {
  return std::isfinite(v) && v >= -kEpsAdd && v <= 1.0 + kEpsAdd;
}

}  // namespace

Opinion make_opinion(double b, double d, double u, double a) {
  const double parts[4] = {b, d, u, a};
  static const char* const names[4] = {"b", "d", "u", "a"};
  for (int i = 0; i < 4; ++i) {
    if (!in_unit(parts[i])) {
      fail(ErrorKind::OutOfRange,
           std::string(names[i]) + " = " + std::to_string(parts[i]) +
               " lies outside [0,1]");
    }
  }
  const double sum = b + d + u;
  if (std::fabs(sum - 1.0) > kEpsAdd) {
    fail(ErrorKind::AdditivityViolation,
         "b + d + u = " + std::to_string(sum));
  }
  return Opinion{clamp01(b), clamp01(d), clamp01(u), clamp01(a)};
}

double expectation(const Opinion& w) { return w.b + w.a * w.u; }

Opinion negate(const Opinion& w) { return Opinion{w.d, w.b, w.u, 1.0 - w.a}; }

BasicProbabilityVector to_pv(const Opinion& w) {
  return BasicProbabilityVector{expectation(w), w.u, w.a};
}

Opinion from_pv(const BasicProbabilityVector& pv) {
  if (!in_unit(pv.e) || !in_unit(pv.u) || !in_unit(pv.a)) {
    fail(ErrorKind::InvalidVector, "component outside [0,1]");
  }
  const double b = pv.e - pv.a * pv.u;
  const double d = 1.0 - pv.e - pv.u * (1.0 - pv.a);
  if (b < -kEpsAdd || d < -kEpsAdd) {
    fail(ErrorKind::InvalidVector,
         "derived masses b = " + std::to_string(b) +
             ", d = " + std::to_string(d) + " not both non-negative");
  }
  return make_opinion(clamp01(b), clamp01(d), clamp01(pv.u), pv.a);
}

BelPl bel_pl(const Opinion& w) { return BelPl{w.b, w.b + w.u}; }

Opinion clip(double e, double a, double u_raw) {
  e = clamp01(e);
  a = clamp01(a);
  const double inf = std::numeric_limits<double>::infinity();
  const double cap_b = a > 0.0 ? e / a : inf;                  // keeps b >= 0
  const double cap_d = a < 1.0 ? (1.0 - e) / (1.0 - a) : inf;  // keeps d >= 0
  const double u_max = std::min(cap_b, cap_d);
  if (!std::isfinite(u_raw)) u_raw = inf;  // NaN and inf both take the cap
  const double u = std::clamp(u_raw, 0.0, u_max);
  const double b = clamp01(e - a * u);
  const double d = clamp01(1.0 - b - u);
  return make_opinion(b, d, u, a);
}

Opinion finalize_opinion(double b, double d, double u, double a, double e) {
  const double lo = -kEpsPre;
  const double hi = 1.0 + kEpsPre;
  const double parts[3] = {b, d, u};
  for (double v : parts) {
    if (!(v >= lo && v <= hi)) {  // also catches NaN
      fail(ErrorKind::InternalRangeError,
           "mass " + std::to_string(v) +
               " outside the slack band; the operands lie outside the "
               "operator's domain");
    }
  }
  if (std::fabs(b + d + u - 1.0) > kEpsAdd) {
    fail(ErrorKind::InternalRangeError,
         "mass sum " + std::to_string(b + d + u) + " violates additivity");
  }
  a = clamp01(a);
  if (b >= 0.0 && b <= 1.0 && d >= 0.0 && d <= 1.0 && u >= 0.0 && u <= 1.0) {
    return make_opinion(b, d, u, a);
  }
  return clip(e, a, u);
}

}  // namespace blc
