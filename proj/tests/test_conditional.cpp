#include "belief/conditional.hpp"

#include <cmath>
#include <functional>

#include "doctest.h"

#include "belief/beta.hpp"
#include "belief/errors.hpp"
#include "belief/oracle.hpp"
#include "test_support.hpp"

using namespace blc;

namespace {

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalRangeError;
}

// Scalar Bayes plus total probability, the probability-level counterpart of
// abduce.
double scalar_abduce(double px, double p1, double p2, double ay) {
  const double pos = ay * p1 / (ay * p1 + (1.0 - ay) * p2);
  const double neg =
      ay * (1.0 - p1) / (ay * (1.0 - p1) + (1.0 - ay) * (1.0 - p2));
  return px * pos + (1.0 - px) * neg;
}

}  // namespace

TEST_CASE("deduce at expectation level") {
  Rng rng(101);
  // identical conditionals make the antecedent irrelevant
  for (int i = 0; i < 200; ++i) {
    const Opinion wx = random_opinion(rng);
    const Opinion w = random_opinion(rng);
    const Opinion out = deduce(wx, ConditionalPair{w, w});
    CHECK(std::fabs(expectation(out) - expectation(w)) <= 1e-9);
  }

  // vacuous antecedent mixes by the base rate
  for (int i = 0; i < 200; ++i) {
    const Opinion pos = random_opinion(rng);
    const Opinion neg = random_opinion(rng);
    const double ax = 0.05 + 0.9 * rng.uniform();
    const Opinion out =
        deduce(make_opinion(0, 0, 1, ax), ConditionalPair{pos, neg});
    const double want =
        ax * expectation(pos) + (1.0 - ax) * expectation(neg);
    CHECK(std::fabs(expectation(out) - want) <= 1e-9);
  }

  // dogmatic-true antecedent selects the positive conditional's expectation
  const Opinion out = deduce(make_opinion(1, 0, 0, 0.5),
                             ConditionalPair{make_opinion(0.9, 0.1, 0, 0.5),
                                             make_opinion(0.2, 0.8, 0, 0.5)});
  CHECK(std::fabs(expectation(out) - 0.9) <= 1e-12);

  Rng rng2(103);
  for (int i = 0; i < 200; ++i) {
    const Opinion pos = random_opinion(rng2);
    const Opinion neg = random_opinion(rng2);
    const Opinion sure = deduce(make_opinion(1, 0, 0, 0.5),
                                ConditionalPair{pos, neg});
    CHECK(std::fabs(expectation(sure) - expectation(pos)) <= 1e-9);
  }
}

TEST_CASE("deduce satisfies total probability on random inputs") {
  Rng rng(107);
  for (int i = 0; i < 1000; ++i) {
    const Opinion wx = random_opinion(rng);
    const Opinion pos = random_opinion(rng);
    const Opinion neg = random_opinion(rng);
    const Opinion out = deduce(wx, ConditionalPair{pos, neg});
    const double want = expectation(wx) * expectation(pos) +
                        (1.0 - expectation(wx)) * expectation(neg);
    CHECK(std::fabs(expectation(out) - want) <= 1e-9);
  }
}

TEST_CASE("reverse_conditionals expectation-level Bayes identity") {
  // uninformative likelihoods collapse to the prior
  Rng rng(109);
  for (int i = 0; i < 100; ++i) {
    const Opinion c = random_opinion(rng);
    const double ay = 0.05 + 0.9 * rng.uniform();
    const auto [pair, diags] = reverse_conditionals(c, c, ay);
    CHECK(std::fabs(expectation(pair.pos) - ay) <= 1e-6);
  }

  // a perfect test pins the positive reverse conditional to certainty
  const auto perfect = reverse_conditionals(make_opinion(1, 0, 0, 0.5),
                                            make_opinion(0, 1, 0, 0.5), 0.5);
  CHECK(std::fabs(expectation(perfect.pair.pos) - 1.0) <= 1e-9);

  // plain Bayes arithmetic: 0.09 / (0.09 + 0.18) = 1/3
  Rng rng2(113);
  for (int i = 0; i < 50; ++i) {
    // random opinions with the prescribed expectations
    const Opinion cpos = clip(0.9, 0.05 + 0.9 * rng2.uniform(),
                              rng2.uniform());
    const Opinion cneg = clip(0.2, 0.05 + 0.9 * rng2.uniform(),
                              rng2.uniform());
    const auto reversed = reverse_conditionals(cpos, cneg, 0.1);
    CHECK(std::fabs(expectation(reversed.pair.pos) - 1.0 / 3) <= 1e-6);
  }

  CHECK(kind_of([] {
          reverse_conditionals(make_opinion(0.5, 0.3, 0.2, 0.5),
                               make_opinion(0.5, 0.3, 0.2, 0.5), 0.0);
        }) == ErrorKind::DegenerateBaseRate);
  CHECK(kind_of([] {
          reverse_conditionals(make_opinion(0.5, 0.3, 0.2, 0.5),
                               make_opinion(0.5, 0.3, 0.2, 0.5), 1.0);
        }) == ErrorKind::DegenerateBaseRate);
  CHECK(kind_of([] {
          reverse_conditionals(make_opinion(0, 1, 0, 0.5),
                               make_opinion(0, 1, 0, 0.5), 0.4);
        }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("abduce") {
  Rng rng(127);
  // uninformative conditionals: the answer is the consequent base rate
  for (int i = 0; i < 100; ++i) {
    const Opinion wx = random_opinion(rng);
    const Opinion c = random_opinion(rng);
    const double ay = 0.05 + 0.9 * rng.uniform();
    const Abduced out = abduce(wx, c, c, ay);
    CHECK(std::fabs(expectation(out.value) - ay) <= 1e-6);
  }

  // perfect test with a certain antecedent
  const Abduced perfect = abduce(make_opinion(1, 0, 0, 0.5),
                                 make_opinion(1, 0, 0, 0.5),
                                 make_opinion(0, 1, 0, 0.5), 0.5);
  CHECK(std::fabs(expectation(perfect.value) - 1.0) <= 1e-9);

  // matches the scalar Bayes-then-total-probability pipeline
  for (int i = 0; i < 100; ++i) {
    const Opinion wx = random_opinion(rng);
    const Opinion cpos = random_opinion(rng);
    const Opinion cneg = random_opinion(rng);
    const double ay = 0.05 + 0.9 * rng.uniform();
    const Abduced out = abduce(wx, cpos, cneg, ay);
    const double want = scalar_abduce(expectation(wx), expectation(cpos),
                                      expectation(cneg), ay);
    CHECK(std::fabs(expectation(out.value) - want) <= 1e-6);
  }
}

TEST_CASE("reverse_conditionals reports clip events") {
  // strongly informative likelihoods routinely push the quotient outside the
  // triangle; the clip must be recorded and expectations preserved
  Rng rng(131);
  int clipped = 0;
  for (int i = 0; i < 300; ++i) {
    const Opinion cpos = random_opinion(rng);
    const Opinion cneg = random_opinion(rng);
    const double ay = 0.05 + 0.9 * rng.uniform();
    const auto reversed = reverse_conditionals(cpos, cneg, ay);
    clipped += reversed.diagnostics.empty() ? 0 : 1;
    const double e1 = expectation(cpos);
    const double e2 = expectation(cneg);
    const double want = ay * e1 / (ay * e1 + (1.0 - ay) * e2);
    CHECK(std::fabs(expectation(reversed.pair.pos) - want) <= 1e-6);
  }
  CHECK(clipped > 0);
}
