#include "belief/beta.hpp"

#include <cmath>
#include <string>

#include "belief/errors.hpp"

namespace blc {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2*pi)/2

// Lanczos g = 7, nine terms. Good to ~1e-13 relative over the positive axis.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    fail(ErrorKind::OutOfRange, "log_gamma requires x > 0");
  }
  if (x < 0.5) {
    // Reflection: ln G(x) = ln(pi / sin(pi x)) - ln G(1 - x)
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

AugmentedBeta make_augmented_beta(double r, double s, double a) {
  if (!(std::isfinite(r) && r >= 0.0)) {
    fail(ErrorKind::OutOfRange, "r = " + std::to_string(r) + " must be >= 0");
  }
  if (!(std::isfinite(s) && s >= 0.0)) {
    fail(ErrorKind::OutOfRange, "s = " + std::to_string(s) + " must be >= 0");
  }
  if (!(std::isfinite(a) && a >= -kEpsAdd && a <= 1.0 + kEpsAdd)) {
    fail(ErrorKind::OutOfRange,
         "a = " + std::to_string(a) + " lies outside [0,1]");
  }
  return AugmentedBeta{r, s, std::min(1.0, std::max(0.0, a))};
}

BetaShape to_shape(const AugmentedBeta& ab) {
  const double alpha = ab.r + 2.0 * ab.a;
  const double beta = ab.s + 2.0 * (1.0 - ab.a);
  if (alpha <= 0.0) {
    fail(ErrorKind::ZeroShapeParameter, "alpha = r + 2a = 0 (r = 0, a = 0)");
  }
  if (beta <= 0.0) {
    fail(ErrorKind::ZeroShapeParameter,
         "beta = s + 2(1-a) = 0 (s = 0, a = 1)");
  }
  return BetaShape{alpha, beta};
}

double beta_expectation(const AugmentedBeta& ab) {
  return (ab.r + 2.0 * ab.a) / (ab.r + ab.s + 2.0);
}

AugmentedBeta opinion_to_beta(const Opinion& w) {
  if (w.u <= kEpsDogmatic) {
    fail(ErrorKind::DogmaticOpinion,
         "u = " + std::to_string(w.u) + "; the evidence mapping diverges");
  }
  return AugmentedBeta{2.0 * w.b / w.u, 2.0 * w.d / w.u, w.a};
}

Opinion beta_to_opinion(const AugmentedBeta& ab) {
  const double denom = ab.r + ab.s + 2.0;
  return make_opinion(ab.r / denom, ab.s / denom, 2.0 / denom, ab.a);
}

double pdf_eval(const BetaShape& shape, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorKind::OutOfRange, "p = " + std::to_string(p) + " outside [0,1]");
  }
  if (p == 0.0 && shape.alpha < 1.0) {
    fail(ErrorKind::SingularEndpoint, "density has a pole at p = 0");
  }
  if (p == 1.0 && shape.beta < 1.0) {
    fail(ErrorKind::SingularEndpoint, "density has a pole at p = 1");
  }
  double t = log_gamma(shape.alpha + shape.beta) - log_gamma(shape.alpha) -
             log_gamma(shape.beta);
  // Zero exponents are skipped so the endpoints stay well defined.
  if (shape.alpha != 1.0) t += (shape.alpha - 1.0) * std::log(p);
  if (shape.beta != 1.0) t += (shape.beta - 1.0) * std::log1p(-p);
  return std::exp(t);
}

std::vector<GridPoint> pdf_grid(const BetaShape& shape, int n) {
  if (n < 2) {
    fail(ErrorKind::PreconditionViolated, "pdf_grid needs n >= 2 points");
  }
  std::vector<GridPoint> grid(static_cast<std::size_t>(n));
  const double step = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] =
        GridPoint{i == n - 1 ? 1.0 : i * step, 0.0, false};
  }
  for (int i = 0; i < n; ++i) {
    auto& point = grid[static_cast<std::size_t>(i)];
    const bool singular = (i == 0 && shape.alpha < 1.0) ||
                          (i == n - 1 && shape.beta < 1.0);
    if (singular) {
      const int neighbor = i == 0 ? 1 : n - 2;
      point.density =
          pdf_eval(shape, grid[static_cast<std::size_t>(neighbor)].p);
      point.clamped = true;
    } else {
      point.density = pdf_eval(shape, point.p);
    }
  }
  return grid;
}

double Rng::normal() {
  for (;;) {
    const double x = 2.0 * uniform() - 1.0;
    const double y = 2.0 * uniform() - 1.0;
    const double s = x * x + y * y;
    if (s > 0.0 && s < 1.0) {
      return x * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) {
    fail(ErrorKind::OutOfRange, "gamma shape must be positive");
  }
  if (shape < 1.0) {
    const double boosted = gamma(shape + 1.0);
    return boosted * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    const double x = normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample(const BetaShape& shape, Rng& rng) {
  const double g1 = rng.gamma(shape.alpha);
  const double g2 = rng.gamma(shape.beta);
  return g1 / (g1 + g2);
}

}  // namespace blc
