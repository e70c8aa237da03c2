#include "doctest.h"

#include <random>

#include "specgap/rearrange.hpp"

using namespace specgap;

namespace {

bool holds(const RearrangementReport<double>& r, double eps) {
  return r.hlLeft >= r.hlRight - eps && r.psLeft <= r.psRight + eps && r.lambdaRearranged <= r.lambdaOriginal + eps;
}

PotentialGridd random_pl(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(0.0, 50.0);
  std::vector<double> knots(8);
  for (auto& k : knots) k = v(rng);
  return sample(PotentialSpec{PotentialKind::samples, knots, {0, 1}}, 800);
}

}  // namespace

TEST_CASE("center-out order") {
  CHECK(detail::center_out_order(3) == std::vector<Eigen::Index>{1, 2, 0});
  CHECK(detail::center_out_order(4) == std::vector<Eigen::Index>{1, 2, 0, 3});
  CHECK(detail::center_out_order(1) == std::vector<Eigen::Index>{0});
}

TEST_CASE("symmetric decreasing rearrangement") {
  Eigen::Vector3d f(1, 3, 2);
  const Eigen::VectorXd s = symmetric_decreasing(f);
  CHECK(s[1] == 3.0);
  CHECK(s == Eigen::Vector3d(1, 3, 2));

  Eigen::VectorXd sym(5);
  sym << 1, 2, 5, 2, 1;
  CHECK(symmetric_decreasing(sym) == sym);
  CHECK(symmetric_decreasing(-sym) == sym);
}

TEST_CASE("symmetric increasing rearrangement") {
  const Eigen::VectorXd v = symmetric_increasing(Eigen::Vector3d(5, 0, 3));
  CHECK(v[1] == 0.0);
  CHECK(v == Eigen::Vector3d(5, 0, 3));
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(6, 2.5);
  CHECK(symmetric_increasing(c) == c);
}

TEST_CASE("even potential is its own rearrangement") {
  const auto g = sample(PotentialSpec{PotentialKind::harmonic, {1, 0}, {-3, 3}}, 301);
  const auto r = verify_chain(g);
  const double eps = rearrangement_slack(g, r);
  CHECK(r.lambdaRearranged == doctest::Approx(r.lambdaOriginal).epsilon(1e-9));
  CHECK(std::abs(r.hlLeft - r.hlRight) <= eps);
  CHECK(std::abs(r.psLeft - r.psRight) <= eps);
  CHECK(holds(r, eps));
}

TEST_CASE("square well: chain is a set of equalities") {
  const auto g = sample(PotentialSpec{PotentialKind::squareWell, {2}, {0, 1}}, 401);
  const auto r = verify_chain(g);
  CHECK(r.hlLeft == doctest::Approx(r.hlRight).epsilon(1e-12));
  CHECK(r.psLeft == doctest::Approx(r.psRight).epsilon(1e-9));
  CHECK(r.lambdaRearranged == doctest::Approx(r.lambdaOriginal).epsilon(1e-12));
}

TEST_CASE("Dirichlet energy of the discrete sine") {
  const Eigen::Index n = 99;
  const double dx = 1.0 / (n + 1);
  Eigen::VectorXd f(n);
  for (Eigen::Index i = 0; i < n; ++i) f[i] = std::sin(std::numbers::pi * (i + 1) * dx);
  const double half = std::sin(std::numbers::pi * dx / 2);
  const double lambda = 4 * half * half / (dx * dx);
  CHECK(dirichlet_energy(f, dx) == doctest::Approx(lambda * f.squaredNorm() * dx).epsilon(1e-12));
}

TEST_CASE("property: rearrangements are permutations and equimeasurable") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_pl(rng);
    const auto star = rearranged_potential(g);
    for (double y : {0.0, 5.0, 12.5, 25.0, 40.0, 50.0}) CHECK(width(star, y) == width(g, y));
    CHECK(is_interval_sublevel(star, 20.0));
    Eigen::VectorXd f = Eigen::VectorXd::Random(g.n());
    const Eigen::VectorXd fs = symmetric_decreasing(f);
    CHECK(fs.squaredNorm() == doctest::Approx(f.squaredNorm()).epsilon(1e-15));
    std::vector<double> a(f.data(), f.data() + f.size()), b(fs.data(), fs.data() + fs.size());
    for (auto& x : a) x = std::abs(x);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(symmetric_decreasing(fs) == fs);
  }
}

TEST_CASE("property: rearrangement chain on random piecewise-linear potentials") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_pl(rng);
    const auto r = verify_chain(g);
    CHECK(holds(r, rearrangement_slack(g, r)));
  }
}
