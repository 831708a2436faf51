#include "belief/beta.hpp"

#include <cmath>

#include "doctest.h"

#include "belief/errors.hpp"
#include "belief/oracle.hpp"
#include "test_support.hpp"

using namespace blc;
using blc::test::check_close;

TEST_CASE("to_shape") {
  CHECK(to_shape(make_augmented_beta(0, 0, 0.5)) == BetaShape{1.0, 1.0});
  CHECK(to_shape(make_augmented_beta(7, 1, 0.5)) == BetaShape{8.0, 2.0});
  try {
    to_shape(make_augmented_beta(0, 0, 0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroShapeParameter);
  }
  try {
    to_shape(make_augmented_beta(1, 0, 1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroShapeParameter);
  }
}

TEST_CASE("beta_expectation") {
  CHECK(beta_expectation(make_augmented_beta(7, 1, 0.5)) == 0.8);
  CHECK(beta_expectation(make_augmented_beta(0, 0, 0.3)) == 0.3);
  // heavy evidence converges to the frequency r/(r+s)
  const double e = beta_expectation(make_augmented_beta(7e6, 1e6, 0.5));
  CHECK(std::fabs(e - 7.0 / 8.0) <= 1e-6);
}

TEST_CASE("opinion/beta bijection on the worked example") {
  const Opinion w = make_opinion(0.7, 0.1, 0.2, 0.5);
  const AugmentedBeta ab = opinion_to_beta(w);
  CHECK(std::fabs(ab.r - 7.0) <= 1e-12);
  CHECK(std::fabs(ab.s - 1.0) <= 1e-12);
  CHECK(ab.a == 0.5);
  CHECK(beta_to_opinion(make_augmented_beta(7, 1, 0.5)) ==
        Opinion{0.7, 0.1, 0.2, 0.5});
  CHECK(beta_to_opinion(make_augmented_beta(0, 0, 0.3)) ==
        Opinion{0.0, 0.0, 1.0, 0.3});
  CHECK(opinion_to_beta(make_opinion(0, 0, 1, 0.4)) ==
        AugmentedBeta{0.0, 0.0, 0.4});
}

TEST_CASE("dogmatic opinions have no beta image") {
  try {
    opinion_to_beta(make_opinion(1, 0, 0, 0.5));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DogmaticOpinion);
  }
}

TEST_CASE("bijection round trips") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const Opinion w = random_opinion(rng);
    if (w.u <= kEpsDogmatic) continue;
    check_close(beta_to_opinion(opinion_to_beta(w)), w, 1e-12);
    CHECK(std::fabs(beta_expectation(opinion_to_beta(w)) - expectation(w)) <=
          1e-12);
  }
  for (int i = 0; i < 1000; ++i) {
    const AugmentedBeta ab =
        make_augmented_beta(100.0 * rng.uniform(), 100.0 * rng.uniform(),
                            rng.uniform());
    const AugmentedBeta back = opinion_to_beta(beta_to_opinion(ab));
    CHECK(std::fabs(back.r - ab.r) <= 1e-9 * (1.0 + ab.r));
    CHECK(std::fabs(back.s - ab.s) <= 1e-9 * (1.0 + ab.s));
    CHECK(back.a == ab.a);
  }
}

TEST_CASE("log_gamma matches the C library to 1e-10 relative") {
  for (double x = 1e-3; x < 1e6; x *= 1.37) {
    const double got = log_gamma(x);
    const double want = std::lgamma(x);
    const double scale = std::max(1.0, std::fabs(want));
    CHECK(std::fabs(got - want) <= 1e-10 * scale);
  }
}

TEST_CASE("pdf_eval") {
  const BetaShape uniform{1.0, 1.0};
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(std::fabs(pdf_eval(uniform, p) - 1.0) <= 1e-12);
  }

  // mode of beta(8,2) sits at (alpha-1)/(alpha+beta-2) = 7/8
  const BetaShape shape{8.0, 2.0};
  const double mode = 7.0 / 8.0;
  CHECK(pdf_eval(shape, mode - 0.01) < pdf_eval(shape, mode));
  CHECK(pdf_eval(shape, mode + 0.01) < pdf_eval(shape, mode));

  try {
    pdf_eval(BetaShape{0.5, 2.0}, 0.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularEndpoint);
  }
}

TEST_CASE("pdf_eval integrates to one") {
  // p = sin^2(theta) removes the endpoint singularities for alpha, beta >= 0.5
  for (const BetaShape shape :
       {BetaShape{0.5, 0.5}, BetaShape{0.5, 50.0}, BetaShape{1.0, 1.0},
        BetaShape{8.0, 2.0}, BetaShape{50.0, 50.0}, BetaShape{2.0, 30.0}}) {
    const auto transformed = [&](double theta) {
      const double s = std::sin(theta);
      const double p = s * s;
      return 2.0 * s * std::cos(theta) * pdf_eval(shape, p);
    };
    const double integral =
        integrate_adaptive(transformed, 1e-8, M_PI / 2 - 1e-7, 1e-9);
    CHECK(std::fabs(integral - 1.0) <= 1e-6);
  }
}

TEST_CASE("pdf_grid") {
  const auto flat = pdf_grid(BetaShape{1.0, 1.0}, 3);
  REQUIRE(flat.size() == 3);
  CHECK(flat[0].p == 0.0);
  CHECK(flat[1].p == 0.5);
  CHECK(flat[2].p == 1.0);
  for (const auto& point : flat) {
    CHECK(std::fabs(point.density - 1.0) <= 1e-12);
    CHECK(!point.clamped);
  }

  // trapezoid integral of a 201-point grid
  const auto grid = pdf_grid(BetaShape{8.0, 2.0}, 201);
  double integral = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    integral += 0.5 * (grid[i].density + grid[i - 1].density) *
                (grid[i].p - grid[i - 1].p);
  }
  CHECK(std::fabs(integral - 1.0) <= 1e-3);

  // singular endpoints are clamped and flagged
  const auto clamped = pdf_grid(BetaShape{0.5, 2.0}, 11);
  CHECK(clamped.front().clamped);
  CHECK(clamped.front().density == clamped[1].density);
  CHECK(!clamped.back().clamped);

  try {
    pdf_grid(BetaShape{1.0, 1.0}, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("sampler determinism and moments") {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample(BetaShape{8.0, 2.0}, a) == sample(BetaShape{8.0, 2.0}, b));
  }

  Rng rng(5);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += sample(BetaShape{1.0, 1.0}, rng);
  CHECK(std::fabs(sum / n - 0.5) <= 0.005);

  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) sum2 += sample(BetaShape{8.0, 2.0}, rng);
  // sd = sqrt(0.8*0.2/11)/sqrt(n)
  const double stderr_ = std::sqrt(0.8 * 0.2 / 11.0 / n);
  CHECK(std::fabs(sum2 / n - 0.8) <= 4.0 * stderr_);
}
