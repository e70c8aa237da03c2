#pragma once

// Discrete symmetric rearrangements about the middle of the grid, and a
// numerical check of the rearrangement chain
//
//   sum V f^2 >= sum V_* (f^*)^2,   sum ((f^*)')^2 <= sum (f')^2,
//   lambda_1(V_*) <= lambda_1(V).

#include <Eigen/Core>

#include <algorithm>
#include <numeric>
#include <vector>

#include "specgap/eigensolve1d.hpp"
#include "specgap/potential.hpp"

namespace specgap {

template <typename Scalar>
struct RearrangementReport {
  Scalar hlLeft;
  Scalar hlRight;
  Scalar psLeft;
  Scalar psRight;
  Scalar lambdaOriginal;
  Scalar lambdaRearranged;
  Scalar supNorm;  // max |f| of the normalized ground state of V
};

namespace detail {

// Node visiting order: center (left middle for even sizes), then alternately
// one step right and one step left.
inline std::vector<Eigen::Index> center_out_order(Eigen::Index n) {
  std::vector<Eigen::Index> order;
  order.reserve(static_cast<std::size_t>(n));
  const Eigen::Index center = (n - 1) / 2;
  order.push_back(center);
  for (Eigen::Index step = 1; static_cast<Eigen::Index>(order.size()) < n; ++step) {
    if (center + step < n) order.push_back(center + step);
    if (center - step >= 0 && static_cast<Eigen::Index>(order.size()) < n) order.push_back(center - step);
  }
  return order;
}

template <typename Derived, typename Compare>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> place_center_out(const Eigen::MatrixBase<Derived>& v,
                                                                           Compare before) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) { return before(v[i], v[j]); });
  const auto order = center_out_order(n);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[order[k]] = v[idx[k]];
  return out;
}

}  // namespace detail

/// Symmetric decreasing rearrangement of |f|.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> symmetric_decreasing(const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> magnitude = f.cwiseAbs();
  return detail::place_center_out(magnitude, [](Scalar x, Scalar y) { return x > y; });
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> symmetric_increasing(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  return detail::place_center_out(v, [](Scalar x, Scalar y) { return x < y; });
}

/// Discrete Dirichlet energy sum ((f_{i+1} - f_i)/dx)^2 dx with zero ends.
template <typename Derived>
typename Derived::Scalar dirichlet_energy(const Eigen::MatrixBase<Derived>& f, typename Derived::Scalar dx) {
  const Eigen::Index n = f.size();
  auto e = f[0] * f[0] + f[n - 1] * f[n - 1];
  if (n > 1) e += (f.tail(n - 1) - f.head(n - 1)).squaredNorm();
  return e / dx;
}

/// Same grid with the interior values replaced by their increasing rearrangement.
template <typename Scalar>
PotentialGrid<Scalar> rearranged_potential(const PotentialGrid<Scalar>& grid) {
  typename PotentialGrid<Scalar>::Vector values = grid.values();
  values.segment(1, grid.n()) = symmetric_increasing(grid.interior());
  return PotentialGrid<Scalar>(grid.a(), grid.b(), std::move(values), grid.cap());
}

template <typename Scalar>
RearrangementReport<Scalar> verify_chain(const PotentialGrid<Scalar>& grid, Scalar tol = Scalar(kDefaultBisectionTol)) {
  const auto ground = smallest_eigenpair(grid, tol);
  const auto rearranged = rearranged_potential(grid);
  const auto ground_star = smallest_eigenpair(rearranged, tol);

  const Scalar dx = grid.dx();
  const auto& f = ground.f;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f_star = symmetric_decreasing(f);
  const auto v = grid.interior();
  const auto v_star = rearranged.interior();

  RearrangementReport<Scalar> report{};
  report.hlLeft = (v.array() * f.array().square()).sum() * dx;
  report.hlRight = (v_star.array() * f_star.array().square()).sum() * dx;
  report.psLeft = dirichlet_energy(f_star, dx);
  report.psRight = dirichlet_energy(f, dx);
  report.lambdaOriginal = ground.lambda1;
  report.lambdaRearranged = ground_star.lambda1;
  report.supNorm = f.cwiseAbs().maxCoeff();
  return report;
}

/// Slack allowed on each inequality of the chain: C dx (max V - min V) ||f||_inf^2.
template <typename Scalar>
Scalar rearrangement_slack(const PotentialGrid<Scalar>& grid, const RearrangementReport<Scalar>& report,
                           Scalar constant = Scalar(10)) {
  const auto v = grid.interior();
  return constant * grid.dx() * (v.maxCoeff() - v.minCoeff()) * report.supNorm * report.supNorm;
}

}  // namespace specgap
