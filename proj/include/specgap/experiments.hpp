#pragma once

// Test potentials and helpers shared by the CLI sweeps and the test suites.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "specgap/io.hpp"

namespace specgap {

struct NamedPotential {
  std::string name;
  PotentialInput input;
};

/// Nodes per unit length for the cone model; keeps dx = 1/64 for every D.
inline constexpr Eigen::Index kConeNodesPerUnit = 64;

PotentialInput cone_model_input(double D);

/// squareWell, |x|, x^2, x^4 and the cone model at D = 16, 64, 256.
std::vector<NamedPotential> convex_suite();

/// Piecewise-linear potential on [0, 1] through `knots` equally spaced knots
/// with values uniform in [0, vmax].
PotentialInput random_piecewise_linear(std::mt19937_64& rng, int knots = 8, double vmax = 50.0, Eigen::Index n = 800);

struct LineFit {
  double slope;
  double intercept;
};

/// Least-squares fit of log y against log x.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace specgap
