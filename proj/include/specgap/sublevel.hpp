#pragma once

// Sublevel widths w(y) = |{x : V(x) <= y}| and the functional
// F(y) = 1/w(y)^2 + y whose minimum controls the ground energy from both sides:
//
//   min F / 250  <=  lambda_1  <=  min_y (pi^2 / w(y)^2 + y)
//
// the upper bound requiring the minimizing sublevel set to be an interval.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "specgap/potential.hpp"

namespace specgap {

template <typename Scalar>
struct SublevelReport {
  Scalar yStar;
  Scalar widthAtYStar;
  Scalar fStar;
  bool isInterval;
  Scalar lowerBound;
  std::optional<Scalar> upperBoundSharp;
};

template <typename Scalar>
struct EigenvalueBounds {
  Scalar lower;
  std::optional<Scalar> upperSharp;
};

inline constexpr double kLowerBoundDenominator = 250.0;

/// dx times the number of interior nodes with V_i <= y.
template <typename Scalar>
Scalar width(const PotentialGrid<Scalar>& grid, Scalar y) {
  const auto interior = grid.interior();
  const Eigen::Index count = (interior.array() <= y).count();
  return Scalar(count) * grid.dx();
}

/// True iff the interior nodes with V_i <= y form one nonempty contiguous run.
template <typename Scalar>
bool is_interval_sublevel(const PotentialGrid<Scalar>& grid, Scalar y) {
  const auto interior = grid.interior();
  Eigen::Index runs = 0;
  bool inside = false;
  for (Eigen::Index i = 0; i < interior.size(); ++i) {
    const bool member = interior[i] <= y;
    if (member && !inside) ++runs;
    inside = member;
  }
  return runs == 1;
}

/// First and last interior index (1-based node numbering) of the sublevel run,
/// or nullopt when the set is empty or split.
template <typename Scalar>
std::optional<std::pair<Eigen::Index, Eigen::Index>> sublevel_run(const PotentialGrid<Scalar>& grid, Scalar y) {
  if (!is_interval_sublevel(grid, y)) return std::nullopt;
  const auto interior = grid.interior();
  Eigen::Index first = 0;
  while (!(interior[first] <= y)) ++first;
  Eigen::Index last = first;
  while (last + 1 < interior.size() && interior[last + 1] <= y) ++last;
  return std::make_pair(first + 1, last + 1);
}

/// 1/w(y)^2 + y, or +inf when w(y) = 0.
template <typename Scalar>
Scalar functional_value(const PotentialGrid<Scalar>& grid, Scalar y) {
  const Scalar w = width(grid, y);
  if (w == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return Scalar(1) / (w * w) + y;
}

namespace detail {

// Candidate levels are the distinct interior values strictly above min V:
// w is a right-continuous step function jumping only at sample values and F
// grows linearly in y between jumps. Each entry pairs a level with w(level).
template <typename Scalar>
std::vector<std::pair<Scalar, Scalar>> candidate_levels(const PotentialGrid<Scalar>& grid) {
  const auto interior = grid.interior();
  std::vector<Scalar> sorted(interior.begin(), interior.end());
  std::sort(sorted.begin(), sorted.end());
  const Scalar floor = min_value(grid);
  const Scalar dx = grid.dx();
  std::vector<std::pair<Scalar, Scalar>> levels;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k + 1 < sorted.size() && sorted[k + 1] == sorted[k]) continue;
    if (!(sorted[k] > floor)) continue;
    levels.emplace_back(sorted[k], Scalar(k + 1) * dx);
  }
  return levels;
}

template <typename Scalar>
bool interior_is_constant(const PotentialGrid<Scalar>& grid) {
  const auto interior = grid.interior();
  return interior.maxCoeff() == interior.minCoeff();
}

}  // namespace detail

/// Exact minimum of the discrete functional over y > min V.
///
/// A constant interior potential has no admissible candidate level; it is
/// treated as the continuum limit y* = V + eps with w = b - a.
template <typename Scalar>
SublevelReport<Scalar> minimize_functional(const PotentialGrid<Scalar>& grid) {
  constexpr Scalar pi2 = std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  SublevelReport<Scalar> report{};

  const auto levels = detail::candidate_levels(grid);
  if (levels.empty() || detail::interior_is_constant(grid)) {
    const Scalar level = std::max(min_value(grid), grid.interior().minCoeff());
    const Scalar y = std::nextafter(level, std::numeric_limits<Scalar>::infinity());
    const Scalar w = grid.b() - grid.a();
    report.yStar = y;
    report.widthAtYStar = w;
    report.fStar = Scalar(1) / (w * w) + y;
    report.isInterval = true;
    report.lowerBound = report.fStar / Scalar(kLowerBoundDenominator);
    report.upperBoundSharp = pi2 / (w * w) + y;
    return report;
  }

  Scalar bestF = std::numeric_limits<Scalar>::infinity();
  Scalar bestSharp = std::numeric_limits<Scalar>::infinity();
  Scalar sharpLevel = levels.front().first;
  for (const auto& [y, w] : levels) {
    const Scalar inv = Scalar(1) / (w * w);
    const Scalar f = inv + y;
    if (f < bestF) {
      bestF = f;
      report.yStar = y;
      report.widthAtYStar = w;
    }
    const Scalar sharp = pi2 * inv + y;
    if (sharp < bestSharp) {
      bestSharp = sharp;
      sharpLevel = y;
    }
  }
  report.fStar = bestF;
  report.isInterval = is_interval_sublevel(grid, report.yStar);
  report.lowerBound = report.fStar / Scalar(kLowerBoundDenominator);
  if (is_interval_sublevel(grid, sharpLevel)) report.upperBoundSharp = bestSharp;
  return report;
}

/// Lower bound fStar/250 and, when the minimizing sublevel of
/// pi^2/w^2 + y is an interval, that minimum as an upper bound.
template <typename Scalar>
EigenvalueBounds<Scalar> eigenvalue_bounds(const PotentialGrid<Scalar>& grid) {
  const auto report = minimize_functional(grid);
  return {report.lowerBound, report.upperBoundSharp};
}

}  // namespace specgap
