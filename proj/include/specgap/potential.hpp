#pragma once

// Potentials V on a bounded interval [a, b], sampled on a uniform grid with
// n interior nodes and the two Dirichlet endpoints.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specgap/errors.hpp"

namespace specgap {

inline constexpr double kDefaultCap = 1e12;

enum class PotentialKind {
  squareWell,
  linearWell,
  harmonic,
  quartic,
  coneModel,
  samples,
  piecewiseLinear,
};

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

/// Closed-form description of a potential.
///
/// Parameter conventions, all optional unless noted:
///   squareWell       [level = 0]             V = level
///   linearWell       [k = 1, c = 0]          V = k |x - c|
///   harmonic         [k = 1, c = 0]          V = k (x - c)^2
///   quartic          [k = 1, c = 0]          V = k (x - c)^4
///   coneModel        [D] (required, D > 1)   V = D^2 / (D - x)^2 - 1
///   samples          [v0, v1, ...]           values at equally spaced knots
///   piecewiseLinear  [x0, v0, x1, v1, ...]   knots with increasing x
struct PotentialSpec {
  PotentialKind kind = PotentialKind::squareWell;
  std::vector<double> params;
  std::pair<double, double> interval{0.0, 1.0};

  void validate() const;
  double evaluate(double x) const;
};

template <typename Scalar>
class PotentialGrid {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  PotentialGrid(Scalar a, Scalar b, Vector values, Scalar cap = Scalar(kDefaultCap))
      : a_(a), b_(b), values_(std::move(values)), cap_(cap) {
    if (!(b_ > a_)) throw ParameterError("potential grid requires b > a");
    if (values_.size() < 5) throw ParameterError("potential grid requires n >= 3 interior nodes");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(double(values_[i]))) throw ParameterError("potential values must be finite");
      if (values_[i] > cap_) throw ParameterError("potential value exceeds cap");
    }
  }

  Scalar a() const { return a_; }
  Scalar b() const { return b_; }
  Scalar cap() const { return cap_; }
  const Vector& values() const { return values_; }

  /// Number of interior nodes.
  Eigen::Index n() const { return values_.size() - 2; }
  Scalar dx() const { return (b_ - a_) / Scalar(values_.size() - 1); }
  Scalar node(Eigen::Index i) const { return a_ + Scalar(i) * dx(); }

  /// V_1 .. V_n.
  auto interior() const { return values_.segment(1, n()); }

 private:
  Scalar a_;
  Scalar b_;
  Vector values_;
  Scalar cap_;
};

using PotentialGridd = PotentialGrid<double>;

template <typename Scalar = double>
PotentialGrid<Scalar> sample(const PotentialSpec& spec, Eigen::Index n, Scalar cap = Scalar(kDefaultCap)) {
  if (n < 3) throw ParameterError("sample requires n >= 3");
  if (!(cap > 0)) throw ParameterError("sample requires cap > 0");
  spec.validate();
  const Scalar a = spec.interval.first;
  const Scalar b = spec.interval.second;
  const Scalar dx = (b - a) / Scalar(n + 1);
  typename PotentialGrid<Scalar>::Vector values(n + 2);
  for (Eigen::Index i = 0; i < n + 2; ++i) {
    const double v = spec.evaluate(double(a + Scalar(i) * dx));
    values[i] = std::isfinite(v) ? std::min(Scalar(v), cap) : cap;
  }
  return PotentialGrid<Scalar>(a, b, std::move(values), cap);
}

/// D^2/(D - x)^2 - 1 on [0, D]; the pole at x = D is clamped to cap.
template <typename Scalar = double>
PotentialGrid<Scalar> cone_model_potential(Scalar D, Eigen::Index n, Scalar cap = Scalar(kDefaultCap)) {
  if (!(D > 1)) throw ParameterError("cone model requires D > 1");
  if (n < 3) throw ParameterError("cone model requires n >= 3");
  const Scalar dx = D / Scalar(n + 1);
  typename PotentialGrid<Scalar>::Vector values(n + 2);
  for (Eigen::Index i = 0; i < n + 2; ++i) {
    const Scalar gap = D - Scalar(i) * dx;
    values[i] = gap > 0 ? std::min(D * D / (gap * gap) - Scalar(1), cap) : cap;
  }
  // The last node sits on the pole.
  values[n + 1] = cap;
  return PotentialGrid<Scalar>(Scalar(0), D, std::move(values), cap);
}

template <typename Scalar>
PotentialGrid<Scalar> shift(const PotentialGrid<Scalar>& grid, Scalar c) {
  typename PotentialGrid<Scalar>::Vector values = grid.values().array() + c;
  return PotentialGrid<Scalar>(grid.a(), grid.b(), std::move(values), grid.cap() + c);
}

template <typename Scalar>
Scalar min_value(const PotentialGrid<Scalar>& grid) {
  return grid.values().minCoeff();
}

}  // namespace specgap
