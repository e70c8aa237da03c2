#include "specgap/potential.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace specgap {

namespace {

constexpr std::array<std::pair<PotentialKind, const char*>, 7> kKindNames{{
    {PotentialKind::squareWell, "squareWell"},
    {PotentialKind::linearWell, "linearWell"},
    {PotentialKind::harmonic, "harmonic"},
    {PotentialKind::quartic, "quartic"},
    {PotentialKind::coneModel, "coneModel"},
    {PotentialKind::samples, "samples"},
    {PotentialKind::piecewiseLinear, "piecewiseLinear"},
}};

double param_or(const std::vector<double>& p, std::size_t i, double fallback) {
  return i < p.size() ? p[i] : fallback;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
  if (x <= xs.front()) return vs.front();
  if (x >= xs.back()) return vs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto k = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return vs[k - 1] + t * (vs[k] - vs[k - 1]);
}

}  // namespace

std::string to_string(PotentialKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw ParameterError("unknown potential kind '" + name + "'");
}

void PotentialSpec::validate() const {
  const auto [a, b] = interval;
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) throw ParameterError("potential interval requires b > a");
  for (double p : params)
    if (!std::isfinite(p)) throw ParameterError("potential parameters must be finite");

  switch (kind) {
    case PotentialKind::coneModel:
      if (params.empty() || !(params[0] > 1)) throw ParameterError("coneModel requires D > 1");
      break;
    case PotentialKind::samples:
      if (params.size() < 2) throw ParameterError("samples requires at least two values");
      break;
    case PotentialKind::piecewiseLinear:
      if (params.size() < 4 || params.size() % 2 != 0)
        throw ParameterError("piecewiseLinear requires (x, v) pairs for at least two knots");
      for (std::size_t i = 2; i < params.size(); i += 2)
        if (!(params[i] > params[i - 2])) throw ParameterError("piecewiseLinear knots must increase");
      break;
    default:
      break;
  }
}

double PotentialSpec::evaluate(double x) const {
  switch (kind) {
    case PotentialKind::squareWell:
      return param_or(params, 0, 0.0);
    case PotentialKind::linearWell:
      return param_or(params, 0, 1.0) * std::abs(x - param_or(params, 1, 0.0));
    case PotentialKind::harmonic: {
      const double u = x - param_or(params, 1, 0.0);
      return param_or(params, 0, 1.0) * u * u;
    }
    case PotentialKind::quartic: {
      const double u = x - param_or(params, 1, 0.0);
      return param_or(params, 0, 1.0) * u * u * u * u;
    }
    case PotentialKind::coneModel: {
      const double D = params[0];
      const double gap = D - x;
      if (gap <= 0) return std::numeric_limits<double>::infinity();
      return D * D / (gap * gap) - 1.0;
    }
    case PotentialKind::samples: {
      const std::size_t m = params.size();
      std::vector<double> xs(m);
      const auto [a, b] = interval;
      for (std::size_t i = 0; i < m; ++i) xs[i] = a + (b - a) * double(i) / double(m - 1);
      return interpolate(xs, params, x);
    }
    case PotentialKind::piecewiseLinear: {
      std::vector<double> xs, vs;
      for (std::size_t i = 0; i + 1 < params.size(); i += 2) {
        xs.push_back(params[i]);
        vs.push_back(params[i + 1]);
      }
      return interpolate(xs, vs, x);
    }
  }
  return 0.0;
}

}  // namespace specgap
