#include "specgap/experiments.hpp"

#include <cmath>

namespace specgap {

PotentialInput cone_model_input(double D) {
  PotentialInput in;
  in.spec.kind = PotentialKind::coneModel;
  in.spec.params = {D};
  in.spec.interval = {0.0, D};
  in.n = static_cast<Eigen::Index>(std::llround(D)) * kConeNodesPerUnit - 1;
  return in;
}

std::vector<NamedPotential> convex_suite() {
  const auto make = [](PotentialKind kind, double a, double b, Eigen::Index n) {
    PotentialInput in;
    in.spec.kind = kind;
    in.spec.interval = {a, b};
    in.n = n;
    return in;
  };
  std::vector<NamedPotential> suite{
      {"squareWell", make(PotentialKind::squareWell, 0.0, 1.0, 1000)},
      {"linearWell", make(PotentialKind::linearWell, -12.0, 12.0, 4000)},
      {"harmonic", make(PotentialKind::harmonic, -12.0, 12.0, 4000)},
      {"quartic", make(PotentialKind::quartic, -6.0, 6.0, 4000)},
  };
  for (double D : {16.0, 64.0, 256.0}) suite.push_back({"coneModel D=" + std::to_string(int(D)), cone_model_input(D)});
  return suite;
}

PotentialInput random_piecewise_linear(std::mt19937_64& rng, int knots, double vmax, Eigen::Index n) {
  std::uniform_real_distribution<double> value(0.0, vmax);
  PotentialInput in;
  in.spec.kind = PotentialKind::piecewiseLinear;
  in.spec.interval = {0.0, 1.0};
  in.n = n;
  for (int k = 0; k < knots; ++k) {
    in.spec.params.push_back(double(k) / double(knots - 1));
    in.spec.params.push_back(value(rng));
  }
  return in;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
  return {slope, (sy - slope * sx) / double(m)};
}

}  // namespace specgap
