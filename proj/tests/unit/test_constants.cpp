#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "specgap/constants.hpp"
#include "specgap/errors.hpp"

using namespace specgap;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// The displayed formula evaluated term by term, independent of the library.
double oracle_case2(double a, double b, double g) {
  const double bracket = std::sqrt(a) / 2 * (1 - b / kPi2) - 1 / std::sqrt(1 + g);
  return bracket * bracket / g;
}

}  // namespace

TEST_CASE("reference triple") {
  const double value = objective(kReferenceTriple);
  CHECK(std::abs(value - 0.0040782) <= 1e-6);
  CHECK(value >= 1.0 / 250);
  CHECK(case2_gradient_term(kReferenceTriple) == doctest::Approx(oracle_case2(0.99, 0.007, 14.1327)).epsilon(1e-14));
  CHECK(1 - kReferenceTriple.alpha == doctest::Approx(0.01));
  CHECK(kReferenceTriple.alpha * kReferenceTriple.beta == doctest::Approx(0.00693));
  CHECK(value == doctest::Approx(case2_gradient_term(kReferenceTriple)));
}

TEST_CASE("closed-form limits of the case 2 term") {
  CHECK(case2_gradient_term({0.5, kPi2, 1.0}) == doctest::Approx(0.5));
  for (double g : {0.5, 3.0, 20.0}) {
    CHECK(case2_gradient_term({0.5, kPi2, g}) == doctest::Approx(1 / (g * (1 + g))));
    CHECK(case2_gradient_term({1e-16, 0.3, g}) == doctest::Approx(1 / (g * (1 + g))).epsilon(1e-6));
  }
}

TEST_CASE("feasibility") {
  CHECK(is_feasible(kReferenceTriple));
  CHECK(std::sqrt(0.99) / 2 * (1 - 0.007 / kPi2) == doctest::Approx(0.49714).epsilon(1e-5));
  CHECK(1 / std::sqrt(15.1327) == doctest::Approx(0.25706).epsilon(1e-5));
  CHECK_FALSE(is_feasible({0.5, 0.1, 1.0}));
  CHECK_FALSE(is_feasible({1.0, 0.007, 14.1327}));
  CHECK_FALSE(is_feasible({0.0, 0.007, 14.1327}));
  CHECK_FALSE(is_feasible({0.9, 0.0, 14.0}));
  CHECK_FALSE(is_feasible({0.9, kPi2, 14.0}));
  CHECK_FALSE(is_feasible({0.9, 0.1, -1.0}));
  CHECK_THROWS_AS(objective({0.5, 0.1, 1.0}), PreconditionError);
}

TEST_CASE("spot value") {
  const double f = oracle_case2(0.9, 0.5, 40);
  CHECK(objective({0.9, 0.5, 40}) == doctest::Approx(std::min({f, 0.1, 0.45})).epsilon(1e-14));
}

TEST_CASE("minimal and optimal gamma") {
  const double g = minimal_feasible_gamma(0.99, 0.007);
  CHECK(std::sqrt(0.99) / 2 * (1 - 0.007 / kPi2) == doctest::Approx(1 / std::sqrt(1 + g)).epsilon(1e-12));
  CHECK(is_feasible({0.99, 0.007, g * (1 + 1e-12)}));
  CHECK_FALSE(is_feasible({0.99, 0.007, g * 0.999}));

  const double best = optimal_gamma(0.99, 0.007);
  CHECK(best == doctest::Approx(14.1327).epsilon(1e-4));
  const double top = case2_gradient_term({0.99, 0.007, best});
  for (double x = g * 1.001; x < 200; x *= 1.05) CHECK(case2_gradient_term({0.99, 0.007, x}) <= top + 1e-15);
}

TEST_CASE("search") {
  const auto one = search(1, 1);
  CHECK(one.evaluations == 1);
  CHECK(one.best.alpha == kReferenceTriple.alpha);
  CHECK(one.best.beta == kReferenceTriple.beta);
  CHECK(one.best.gamma == kReferenceTriple.gamma);
  CHECK(one.value == doctest::Approx(0.0040782).epsilon(1e-4));

  const auto big = search(100000, 1);
  CHECK(is_feasible(big.best));
  CHECK(big.value >= 1.0 / 250);
  CHECK(big.value >= one.value);
  CHECK(big.evaluations <= 100000);
  CHECK(big.value == doctest::Approx(objective(big.best)));

  const auto again = search(100000, 1, 3);
  CHECK(again.value == big.value);
  CHECK(again.best.alpha == big.best.alpha);
  CHECK(again.evaluations == big.evaluations);
}

TEST_CASE("property: objective never exceeds 1 - alpha or alpha beta") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(0.01, 0.999), ub(1e-4, kPi2 - 1e-4), ug(0.1, 500.0);
  int feasible = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const ConstantTriple t{ua(rng), ub(rng), ug(rng)};
    if (!is_feasible(t)) {
      CHECK_THROWS_AS(objective(t), PreconditionError);
      continue;
    }
    ++feasible;
    const double v = objective(t);
    CHECK(v <= 1 - t.alpha);
    CHECK(v <= t.alpha * t.beta);
    CHECK(v < 1);
    CHECK(v >= 0);
  }
  CHECK(feasible > 100);
}
