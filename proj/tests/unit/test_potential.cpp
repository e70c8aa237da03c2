#include "doctest.h"

#include <random>

#include "specgap/potential.hpp"

using namespace specgap;

namespace {

PotentialSpec spec(PotentialKind kind, std::vector<double> params, double a, double b) { return {kind, params, {a, b}}; }

}  // namespace

TEST_CASE("squareWell samples to zeros") {
  const auto g = sample(spec(PotentialKind::squareWell, {}, 0, 1), 3);
  CHECK(g.values().size() == 5);
  CHECK(g.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.dx() == doctest::Approx(0.25));
  CHECK(g.n() == 3);
}

TEST_CASE("harmonic on [-1, 1] with three interior nodes") {
  const auto g = sample(spec(PotentialKind::harmonic, {}, -1, 1), 3);
  const std::vector<double> expected{1, 0.25, 0, 0.25, 1};
  for (int i = 0; i < 5; ++i) CHECK(g.values()[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  CHECK(min_value(g) == 0.0);
}

TEST_CASE("coneModel evaluation") {
  CHECK(spec(PotentialKind::coneModel, {10}, 0, 10).evaluate(5) == doctest::Approx(3));
  CHECK(spec(PotentialKind::coneModel, {10}, 0, 10).evaluate(0) == 0.0);
  CHECK(spec(PotentialKind::coneModel, {4}, 0, 4).evaluate(2) == doctest::Approx(3));

  const auto g = cone_model_potential(10.0, 9);  // dx = 1
  CHECK(g.values()[0] == 0.0);
  CHECK(g.values()[5] == doctest::Approx(3));
  CHECK(g.values()[10] == g.cap());
  CHECK_THROWS_AS(cone_model_potential(1.0, 9), ParameterError);
}

TEST_CASE("other closed forms") {
  CHECK(spec(PotentialKind::linearWell, {2, 1}, -3, 3).evaluate(-1) == doctest::Approx(4));
  CHECK(spec(PotentialKind::quartic, {1, 0}, -3, 3).evaluate(-2) == doctest::Approx(16));
  CHECK(spec(PotentialKind::squareWell, {7}, 0, 1).evaluate(0.3) == 7.0);
  const auto knots = spec(PotentialKind::samples, {0, 2, 0}, 0, 2);
  CHECK(knots.evaluate(0.5) == doctest::Approx(1));
  CHECK(knots.evaluate(1.0) == doctest::Approx(2));
  const auto pl = spec(PotentialKind::piecewiseLinear, {0.2, 1, 0.6, 3}, 0, 1);
  CHECK(pl.evaluate(0.4) == doctest::Approx(2));
  CHECK(pl.evaluate(0.0) == doctest::Approx(1));
  CHECK(pl.evaluate(1.0) == doctest::Approx(3));
}

TEST_CASE("kind names round trip") {
  for (auto k : {PotentialKind::squareWell, PotentialKind::linearWell, PotentialKind::harmonic, PotentialKind::quartic,
                 PotentialKind::coneModel, PotentialKind::samples, PotentialKind::piecewiseLinear})
    CHECK(potential_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(potential_kind_from_string("noSuchWell"), ParameterError);
}

TEST_CASE("shift") {
  const auto sq = sample(spec(PotentialKind::squareWell, {}, 0, 1), 7);
  const auto five = shift(sq, 5.0);
  CHECK(five.values().minCoeff() == 5.0);
  CHECK(five.values().maxCoeff() == 5.0);
  CHECK(shift(sq, 0.0).values() == sq.values());

  const auto h = sample(spec(PotentialKind::harmonic, {}, -1, 1), 3);
  CHECK(shift(h, -1.0).values()[2] == -1.0);
  CHECK(min_value(shift(h, -1.0)) == -1.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(spec(PotentialKind::harmonic, {}, 1, 1).validate(), ParameterError);
  CHECK_THROWS_AS(spec(PotentialKind::coneModel, {0.5}, 0, 1).validate(), ParameterError);
  CHECK_THROWS_AS(spec(PotentialKind::coneModel, {}, 0, 1).validate(), ParameterError);
  CHECK_THROWS_AS(spec(PotentialKind::piecewiseLinear, {0.5, 1, 0.2, 2}, 0, 1).validate(), ParameterError);
  CHECK_THROWS_AS(sample(spec(PotentialKind::squareWell, {}, 0, 1), 2), ParameterError);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
  v[2] = std::nan("");
  CHECK_THROWS_AS(PotentialGridd(0, 1, v), ParameterError);
  v[2] = 2e12;
  CHECK_THROWS_AS(PotentialGridd(0, 1, v), ParameterError);
  CHECK_THROWS_AS(PotentialGridd(0, 1, Eigen::VectorXd::Zero(4)), ParameterError);
}

TEST_CASE("sampling clamps to the cap") {
  const auto g = sample(spec(PotentialKind::coneModel, {4}, 0, 4), 7, 100.0);
  CHECK(g.values().maxCoeff() == 100.0);
  CHECK(g.values()[8] == 100.0);
}

TEST_CASE("property: shift by dyadic constants is exact") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-64, 64);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v(9);
    for (auto& x : v) x = num(rng) / 8.0;
    const PotentialGridd g(0, 1, v);
    const double c = num(rng) / 4.0;
    const auto s = shift(g, c);
    CHECK(min_value(s) == min_value(g) + c);
    CHECK((s.values().array() - c).matrix() == g.values());
  }
}
