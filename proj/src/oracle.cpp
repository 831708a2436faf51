#include "belief/oracle.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "belief/errors.hpp"

namespace blc {

namespace {

double leaf_expectation(const OpinionLit& lit) {
  return lit.b + lit.a * lit.u;
}

double scalar_binary(BinaryOp op, double p, double q) {
  switch (op) {
    case BinaryOp::Add: return p + q;
    case BinaryOp::Sub: return p - q;
    case BinaryOp::Mult: return p * q;
    case BinaryOp::Div:
      if (q == 0.0) fail(ErrorKind::ZeroDenominator, "ratio by zero");
      return p / q;
    case BinaryOp::Comult: return p + q - p * q;
    case BinaryOp::Codiv:
      if (q == 1.0) fail(ErrorKind::ZeroDenominator, "co-ratio by one");
      return (p - q) / (1.0 - q);
  }
  fail(ErrorKind::InternalRangeError, "unreachable operator");
}

}  // namespace

double scalar_eval(const Expr& expr, const Env& env) {
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OpinionLit>) {
          return leaf_expectation(node);
        } else if constexpr (std::is_same_v<T, BetaLit>) {
          return (node.r + 2.0 * node.a) / (node.r + node.s + 2.0);
        } else if constexpr (std::is_same_v<T, PvLit>) {
          return node.e;
        } else if constexpr (std::is_same_v<T, Var>) {
          const auto it = env.find(node.name);
          if (it == env.end()) {
            fail(ErrorKind::UnboundVariable,
                 "variable '" + node.name + "' is not bound");
          }
          return expectation(it->second);
        } else if constexpr (std::is_same_v<T, Not>) {
          return 1.0 - scalar_eval(*node.operand, env);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return scalar_binary(node.op, scalar_eval(*node.lhs, env),
                               scalar_eval(*node.rhs, env));
        } else if constexpr (std::is_same_v<T, Call>) {
          const double px = scalar_eval(*node.args[0], env);
          const double p1 = scalar_eval(*node.args[1], env);
          const double p2 = scalar_eval(*node.args[2], env);
          if (node.kind == CallKind::Deduce) {
            return px * p1 + (1.0 - px) * p2;  // total probability
          }
          const double ay = *node.scalar;
          const double den_pos = ay * p1 + (1.0 - ay) * p2;
          const double den_neg = ay * (1.0 - p1) + (1.0 - ay) * (1.0 - p2);
          if (den_pos == 0.0 || den_neg == 0.0) {
            fail(ErrorKind::ZeroDenominator, "Bayes denominator is zero");
          }
          const double pos = ay * p1 / den_pos;
          const double neg = ay * (1.0 - p1) / den_neg;
          return px * pos + (1.0 - px) * neg;
        }
      },
      expr.node);
}

std::string HomomorphismReport::to_json() const {
  return std::string("{\"expression\":\"") + expression +
         "\",\"belief\":" + format_real(belief_side) +
         ",\"probability\":" + format_real(probability_side) +
         ",\"difference\":" + format_real(difference) +
         ",\"tolerance\":" + format_real(tolerance) +
         ",\"pass\":" + (pass ? "true" : "false") + "}";
}

HomomorphismReport check_homomorphism(const Expr& expr, const Env& env,
                                      const LimitParams& lp,
                                      double tolerance) {
  HomomorphismReport report;
  report.expression = format(expr);
  report.belief_side = expectation(evaluate(expr, env, lp).value);
  report.probability_side = scalar_eval(expr, env);
  report.difference = std::fabs(report.belief_side - report.probability_side);
  report.tolerance = tolerance;
  report.pass = report.difference <= tolerance;
  return report;
}

// ---- Monte-Carlo kernels ----------------------------------------------------
//
// Work is partitioned over kMcStreams streams with seeds derived only from
// (seed, stream index) and per-stream partial sums combined in stream order,
// so the answer does not depend on how many threads run the loop.

namespace {

std::uint64_t stream_seed(std::uint64_t seed, int stream) {
  // splitmix64 on the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

long stream_count(long n, int stream) {
  return n / kMcStreams + (stream < n % kMcStreams ? 1 : 0);
}

double stream_sum(const BetaShape& shape, long n, std::uint64_t seed,
                  int stream) {
  Rng rng(stream_seed(seed, stream));
  const long count = stream_count(n, stream);
  double sum = 0.0;
  for (long k = 0; k < count; ++k) sum += sample(shape, rng);
  return sum;
}

}  // namespace

double mc_mean(const BetaShape& shape, long n, std::uint64_t seed) {
  double partial[kMcStreams];
#pragma omp parallel for schedule(static)
  for (int stream = 0; stream < kMcStreams; ++stream) {
    partial[stream] = stream_sum(shape, n, seed, stream);
  }
  double total = 0.0;
  for (int stream = 0; stream < kMcStreams; ++stream) total += partial[stream];
  return total / static_cast<double>(n);
}

double mc_mean_serial(const BetaShape& shape, long n, std::uint64_t seed) {
  double total = 0.0;
  for (int stream = 0; stream < kMcStreams; ++stream) {
    total += stream_sum(shape, n, seed, stream);
  }
  return total / static_cast<double>(n);
}

std::string McReport::to_json() const {
  return std::string("{\"mean\":") + format_real(mean) +
         ",\"stderr\":" + format_real(stderr_) +
         ",\"expected\":" + format_real(expected) +
         ",\"n\":" + std::to_string(n) + ",\"seed\":" + std::to_string(seed) +
         ",\"pass\":" + (pass ? "true" : "false") + "}";
}

McReport mc_check_beta(const Opinion& w, long n, std::uint64_t seed) {
  const BetaShape shape = to_shape(opinion_to_beta(w));
  McReport report;
  report.n = n;
  report.seed = seed;
  report.expected = expectation(w);
  report.mean = mc_mean(shape, n, seed);
  const double ab_sum = shape.alpha + shape.beta;
  const double variance =
      shape.alpha * shape.beta / (ab_sum * ab_sum * (ab_sum + 1.0));
  report.stderr_ = std::sqrt(variance / static_cast<double>(n));
  report.pass = std::fabs(report.mean - report.expected) <= 4.0 * report.stderr_;
  return report;
}

// ---- brute-force frame oracle -----------------------------------------------

FrameReadout brute_force_frame(const Bba& bba, Subset x) {
  const int n = bba.frame().size();
  if (n > 16) {
    fail(ErrorKind::PreconditionViolated,
         "brute_force_frame enumerates at most 16 atoms");
  }
  const auto members = [n](Subset s) {
    std::vector<int> atoms;
    for (int i = 0; i < n; ++i) {
      if (s.bits & (1ULL << i)) atoms.push_back(i);
    }
    return atoms;
  };
  const std::vector<int> target = members(x);
  const auto contains = [](const std::vector<int>& set, int atom) {
    for (int candidate : set) {
      if (candidate == atom) return true;
    }
    return false;
  };
  FrameReadout out{0.0, 0.0, 0.0, 0.0, 0.0};
  out.a = static_cast<double>(target.size()) / n;
  const std::uint64_t limit = 1ULL << n;
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    const double m = bba.mass(Subset{bits});
    if (m == 0.0) continue;
    const std::vector<int> focal = members(Subset{bits});
    int common = 0;
    for (int atom : focal) {
      if (contains(target, atom)) ++common;
    }
    const bool inside = common == static_cast<int>(focal.size());
    const bool disjoint = common == 0;
    if (inside) {
      out.b += m;
    } else if (disjoint) {
      out.d += m;
    } else {
      out.u += m;
    }
    out.e += m * common / static_cast<double>(focal.size());
  }
  return out;
}

// ---- random generators --------------------------------------------------------

Opinion random_opinion(Rng& rng) {
  return random_opinion(rng, 0.05 + 0.9 * rng.uniform());
}

Opinion random_opinion(Rng& rng, double a) {
  const double u = 1.0 - std::sqrt(rng.uniform());
  const double b = rng.uniform() * (1.0 - u);
  const double d = 1.0 - u - b;
  return make_opinion(b, std::max(0.0, d), u, a);
}

Bba random_bba(Rng& rng, const Frame& frame, int max_focals) {
  const std::uint64_t universe = frame.full().bits;
  std::map<Subset, double> masses;
  const int focals = 1 + static_cast<int>(rng.uniform() * max_focals);
  for (int k = 0; k < focals; ++k) {
    // uniform() < 1, so bits lands in [1, universe]
    const std::uint64_t bits =
        1 + static_cast<std::uint64_t>(rng.uniform() *
                                       static_cast<double>(universe));
    masses[Subset{bits}] += -std::log(rng.uniform());
  }
  if (rng.uniform() < 0.5) {
    masses[frame.full()] += -std::log(rng.uniform());
  }
  double sum = 0.0;
  for (const auto& [subset, mass] : masses) sum += mass;
  for (auto& [subset, mass] : masses) mass /= sum;
  return Bba(frame, std::move(masses));
}

Bba random_cluster_bba(Rng& rng, const Frame& frame, bool singletons_only) {
  const int n = frame.size();
  std::map<Subset, double> masses;
  Subset used;
  const int blocks = 1 + static_cast<int>(rng.uniform() * n);
  for (int k = 0; k < blocks; ++k) {
    Subset block;
    const int width =
        singletons_only ? 1 : 1 + static_cast<int>(rng.uniform() * 2);
    for (int j = 0; j < width; ++j) {
      const int atom = static_cast<int>(rng.uniform() * n);
      const Subset candidate = frame.singleton(atom);
      if (!candidate.intersects(used) && !candidate.intersects(block)) {
        block.bits |= candidate.bits;
      }
    }
    if (block.empty()) continue;
    used.bits |= block.bits;
    masses[block] += -std::log(rng.uniform());
  }
  masses[frame.full()] += -std::log(rng.uniform());
  double sum = 0.0;
  for (const auto& [subset, mass] : masses) sum += mass;
  for (auto& [subset, mass] : masses) mass /= sum;
  return Bba(frame, std::move(masses));
}

// ---- quadrature ----------------------------------------------------------------

namespace {

double simpson(double lo, double hi, double f_lo, double f_mid, double f_hi) {
  return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double f_lo, double f_mid, double f_hi, double whole,
                double tolerance, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double f_lmid = f(lmid);
  const double f_rmid = f(rmid);
  const double left = simpson(lo, mid, f_lo, f_lmid, f_mid);
  const double right = simpson(mid, hi, f_mid, f_rmid, f_hi);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tolerance) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(f, lo, mid, f_lo, f_lmid, f_mid, left, tolerance / 2.0,
                  depth - 1) +
         adaptive(f, mid, hi, f_mid, f_rmid, f_hi, right, tolerance / 2.0,
                  depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tolerance) {
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double whole = simpson(lo, hi, f_lo, f_mid, f_hi);
  return adaptive(f, lo, hi, f_lo, f_mid, f_hi, whole, tolerance, 48);
}

}  // namespace blc
