#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "belief/opinion.hpp"

namespace blc {

/// Evidence form of a Beta density: r positive observations, s negative
/// observations, prior base rate a. Equivalent to a non-dogmatic opinion.
struct AugmentedBeta {
  double r = 0.0;
  double s = 0.0;
  double a = 0.5;

  friend bool operator==(const AugmentedBeta&, const AugmentedBeta&) = default;
};

/// Classic shape parameters, both strictly positive.
struct BetaShape {
  double alpha;
  double beta;

  friend bool operator==(const BetaShape&, const BetaShape&) = default;
};

/// Validates r >= 0, s >= 0, a in [0,1].
AugmentedBeta make_augmented_beta(double r, double s, double a);

/// alpha = r + 2a, beta = s + 2(1-a). Rejects shapes where either parameter
/// would be zero (r = 0 with a = 0, or s = 0 with a = 1).
BetaShape to_shape(const AugmentedBeta& ab);

/// E(P) = (r + 2a) / (r + s + 2).
double beta_expectation(const AugmentedBeta& ab);

/// r = 2b/u, s = 2d/u, prior a. Dogmatic opinions (u <= kEpsDogmatic) are
/// rejected: the evidence diverges and silently capping it would hide that.
AugmentedBeta opinion_to_beta(const Opinion& w);

/// (b, d, u) = (r, s, 2) / (r + s + 2); exact inverse of opinion_to_beta.
Opinion beta_to_opinion(const AugmentedBeta& ab);

/// ln Gamma via a Lanczos approximation, |relative error| <= 1e-10 on the
/// range the library uses (x > 0).
double log_gamma(double x);

/// Density at p, evaluated in log space. p = 0 with alpha < 1 and p = 1 with
/// beta < 1 are poles of the density and rejected.
double pdf_eval(const BetaShape& shape, double p);

struct GridPoint {
  double p;
  double density;
  bool clamped;  // singular endpoint replaced by the nearest interior value
};

/// n >= 2 evenly spaced points on [0,1]; singular endpoints take the density
/// of the nearest interior grid point and are marked clamped.
std::vector<GridPoint> pdf_grid(const BetaShape& shape, int n);

/// Deterministic random stream: a fixed seed yields the same sequence on
/// every platform (the engine and all transforms are pinned by this library,
/// none are implementation-defined). Parallel use takes independent
/// per-stream instances; there is no shared mutable generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the polar method. Each call draws a fresh pair so
  /// the stream does not depend on call history.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang squeeze, boosted for shape < 1.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

/// One draw from beta(alpha, beta) as g1 / (g1 + g2) of two gamma draws.
double sample(const BetaShape& shape, Rng& rng);

}  // namespace blc
