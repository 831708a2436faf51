#pragma once

namespace blc {

/// Additivity tolerance at API boundaries: constructors reject inputs whose
/// mass sum drifts from 1 by more than this, instead of renormalizing.
inline constexpr double kEpsAdd = 1e-9;

/// Slack applied to operator precondition inequalities; inputs within this
/// band of satisfaction are accepted and the output is clipped.
inline constexpr double kEpsPre = 1e-9;

/// Uncertainty at or below this counts as dogmatic (the evidence mapping
/// diverges there).
inline constexpr double kEpsDogmatic = 1e-12;

/// Opinion on a binary frame: belief, disbelief and uncertainty mass plus the
/// base rate of the target. Components lie in [0,1] and b + d + u = 1 within
/// kEpsAdd. Plain immutable data; safe to copy and share across threads.
struct Opinion {
  double b = 0.0;
  double d = 0.0;
  double u = 1.0;
  double a = 0.5;

  friend bool operator==(const Opinion&, const Opinion&) = default;
};

/// Expectation-forward re-parameterization (e, u, a) with e = b + a*u.
struct BasicProbabilityVector {
  double e = 0.5;
  double u = 1.0;
  double a = 0.5;

  friend bool operator==(const BasicProbabilityVector&,
                         const BasicProbabilityVector&) = default;
};

/// Shafer interval of an opinion: bel = b, pl = b + u = 1 - d.
struct BelPl {
  double bel;
  double pl;
};

/// Validates and builds an opinion. Components more than kEpsAdd outside
/// [0,1], or a mass sum off 1 by more than kEpsAdd, are rejected loudly;
/// sub-epsilon dust is clamped onto the boundary, never renormalized.
Opinion make_opinion(double b, double d, double u, double a);

/// Probability expectation E = b + a*u, in [0,1].
double expectation(const Opinion& w);

/// Complement of the proposition: (d, b, u, 1-a).
Opinion negate(const Opinion& w);

BasicProbabilityVector to_pv(const Opinion& w);

/// Inverse of to_pv: b = e - a*u, d = 1 - e - u(1-a). Rejects vectors whose
/// derived b or d is negative beyond kEpsAdd.
Opinion from_pv(const BasicProbabilityVector& pv);

BelPl bel_pl(const Opinion& w);

/// Projection onto the opinion triangle along the line of constant
/// expectation: u is clamped into [0, u_max] with
/// u_max = min(e/a, (1-e)/(1-a)), then b and d are derived so that the
/// expectation stays e and the base rate stays a. Total for e, a in [0,1];
/// the degenerate ratios (a = 0, a = 1) impose no cap, and a non-finite
/// u_raw takes the cap.
Opinion clip(double e, double a, double u_raw);

/// Uniform post-step for operator outputs: components inside [0,1] are taken
/// as-is, rounding dust inside the kEpsPre slack band is clipped while
/// preserving the expectation e and base rate a, anything further out is an
/// InternalRangeError (the operands were outside the operator's domain).
Opinion finalize_opinion(double b, double d, double u, double a, double e);

}  // namespace blc
