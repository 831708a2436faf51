#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "belief/beta.hpp"
#include "belief/expr.hpp"
#include "belief/frames.hpp"

namespace blc {

/// Evaluates an expression at probability level: every leaf is replaced by
/// its expectation and every operator by its probability counterpart
/// (+, -, p*q, p/q, p+q-pq, (p-q)/(1-q), 1-p, total probability, Bayes).
/// The independent side of the expectation-homomorphism check.
double scalar_eval(const Expr& expr, const Env& env);

struct HomomorphismReport {
  std::string expression;
  double belief_side;       // E(evaluate(expr))
  double probability_side;  // scalar_eval(expr)
  double difference;
  double tolerance;
  bool pass;
  std::string to_json() const;
};

HomomorphismReport check_homomorphism(const Expr& expr, const Env& env,
                                      const LimitParams& lp, double tolerance);

/// Mean of n beta draws, split over kMcStreams independent seeded streams.
/// The OpenMP variant parallelizes over streams and combines partial sums in
/// stream order, so it returns bit-identical results to the serial reference
/// for any thread count.
inline constexpr int kMcStreams = 64;
double mc_mean(const BetaShape& shape, long n, std::uint64_t seed);
double mc_mean_serial(const BetaShape& shape, long n, std::uint64_t seed);

struct McReport {
  double mean;
  double stderr_;  // exact beta standard deviation / sqrt(n)
  double expected;
  long n;
  std::uint64_t seed;
  bool pass;  // |mean - expected| <= 4 * stderr_
  std::string to_json() const;
};

/// Samples the beta shape of a non-dogmatic opinion and checks the empirical
/// mean against the opinion's expectation at four standard errors.
McReport mc_check_beta(const Opinion& w, long n, std::uint64_t seed);

struct FrameReadout {
  double b;
  double d;
  double u;
  double a;
  double e;
};

/// Exhaustive power-set evaluation of the frame functions (|frame| <= 16),
/// deliberately written over explicit atom lists rather than bit tricks so
/// it stays an independent code path from the frames module.
FrameReadout brute_force_frame(const Bba& bba, Subset x);

/// Fuzz generator: opinions uniform on the triangle (u = 1 - sqrt(v1),
/// b = v2 (1 - u)), base rates uniform on [0.05, 0.95] so the limit-parameter
/// corners never trigger by accident.
Opinion random_opinion(Rng& rng);
Opinion random_opinion(Rng& rng, double a);

/// Random bba with up to max_focals focal elements (frame included roughly
/// half the time), masses normalized to 1.
Bba random_bba(Rng& rng, const Frame& frame, int max_focals = 4);

/// Random bba whose focals are the frame and/or disjoint clusters; with
/// singletons_only it is Dirichlet.
Bba random_cluster_bba(Rng& rng, const Frame& frame, bool singletons_only);

/// Adaptive Simpson quadrature to the requested absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tolerance);

}  // namespace blc
