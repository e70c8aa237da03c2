#pragma once

// Ground state of -d^2/dx^2 + V on [a, b] with Dirichlet ends, discretized by
// the 3-point stencil on the interior nodes of a PotentialGrid.
//
// lambda_1 is located by bisection on the Sturm count of the tridiagonal
// matrix; the eigenvector follows from inverse iteration with the lower end
// of the final bracket as shift, which keeps T - shift*I positive definite.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "specgap/errors.hpp"
#include "specgap/potential.hpp"
#include "specgap/sublevel.hpp"

namespace specgap {

template <typename Scalar>
struct TridiagonalOperator {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector diag;  // 2/dx^2 + V_i
  Scalar off;   // -1/dx^2
  Scalar dx;

  Eigen::Index size() const { return diag.size(); }

  Vector apply(const Vector& f) const {
    const Eigen::Index n = size();
    Vector out = diag.cwiseProduct(f);
    if (n > 1) {
      out.head(n - 1) += off * f.tail(n - 1);
      out.tail(n - 1) += off * f.head(n - 1);
    }
    return out;
  }
};

template <typename Scalar>
struct Eigenpair1D {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Scalar lambda1;
  Vector f;  // interior nodes, sum f_i^2 dx = 1, max f > 0
  Scalar dx;
  Scalar residual;  // ||T f - lambda1 f||_2 / ||f||_2
};

template <typename Scalar>
struct LinftyCheck {
  Scalar ratio;
  Scalar bound;
  bool holds;
};

struct MassInterval {
  double length;
  Eigen::Index startIndex;  // 0-based into the interior vector
  Eigen::Index endIndex;    // inclusive
};

using Eigenpair1Dd = Eigenpair1D<double>;

inline constexpr double kDefaultBisectionTol = 1e-10;
inline constexpr double kInverseIterationResidual = 1e-8;

template <typename Scalar>
TridiagonalOperator<Scalar> discretize(const PotentialGrid<Scalar>& grid) {
  const Scalar dx = grid.dx();
  const Scalar inv = Scalar(1) / (dx * dx);
  TridiagonalOperator<Scalar> op;
  op.diag = grid.interior().array() + Scalar(2) * inv;
  op.off = -inv;
  op.dx = dx;
  return op;
}

/// Number of eigenvalues strictly below y, from the signs of the LDL^T pivots
/// of T - y I. A vanishing pivot is nudged to -pivmin, i.e. y is treated as
/// lying just above that eigenvalue.
template <typename Scalar>
Eigen::Index eigenvalue_count_below(const TridiagonalOperator<Scalar>& op, Scalar y) {
  const Scalar off2 = op.off * op.off;
  const Scalar pivmin = std::numeric_limits<Scalar>::min() * std::max(Scalar(1), off2);
  Eigen::Index count = 0;
  Scalar q = op.diag[0] - y;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    if (i + 1 == op.size()) break;
    q = op.diag[i + 1] - y - off2 / q;
  }
  return count;
}

template <typename Scalar>
Scalar rayleigh_quotient(const TridiagonalOperator<Scalar>& op, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& f) {
  if (f.size() != op.size()) throw ParameterError("rayleigh_quotient: vector length mismatch");
  const Scalar mass = f.squaredNorm();
  if (mass == Scalar(0)) throw ParameterError("rayleigh_quotient: zero vector");
  // Gradient term with f_0 = f_{n+1} = 0, plus the potential term.
  const Eigen::Index n = f.size();
  const Scalar inv = -op.off;
  Scalar grad = f[0] * f[0] + f[n - 1] * f[n - 1];
  if (n > 1) grad += (f.tail(n - 1) - f.head(n - 1)).squaredNorm();
  grad *= inv;
  const Scalar potential = (op.diag.array() - Scalar(2) * inv).cwiseProduct(f.array().square()).sum();
  return (grad + potential) / mass;
}

namespace detail {

// Solves (T - shift I) x = rhs by symmetric tridiagonal elimination.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_shifted(const TridiagonalOperator<Scalar>& op, Scalar shift,
                                                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
  const Eigen::Index n = op.size();
  const Scalar tiny = std::numeric_limits<Scalar>::min() * Scalar(1e10);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pivot(n), x = rhs;
  pivot[0] = op.diag[0] - shift;
  if (std::abs(pivot[0]) < tiny) pivot[0] = tiny;
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar l = op.off / pivot[i - 1];
    pivot[i] = op.diag[i] - shift - l * op.off;
    if (std::abs(pivot[i]) < tiny) pivot[i] = tiny;
    x[i] -= l * x[i - 1];
  }
  x[n - 1] /= pivot[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = (x[i] - op.off * x[i + 1]) / pivot[i];
  return x;
}

template <typename Scalar>
void normalize_ground_state(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& f, Scalar dx) {
  Eigen::Index imax = 0;
  f.cwiseAbs().maxCoeff(&imax);
  if (f[imax] < 0) f = -f;
  f /= std::sqrt(f.squaredNorm() * dx);
}

}  // namespace detail

template <typename Scalar>
Eigenpair1D<Scalar> smallest_eigenpair(const TridiagonalOperator<Scalar>& op, Scalar tol = Scalar(kDefaultBisectionTol)) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (!(tol > 0)) throw ParameterError("smallest_eigenpair requires tol > 0");
  const Eigen::Index n = op.size();
  const Scalar radius = Scalar(2) * std::abs(op.off);

  // Gershgorin bracket: nothing below lo, lambda_1 <= min(diag) <= hi.
  Scalar lo = op.diag.minCoeff() - radius;
  Scalar hi = op.diag.minCoeff() + radius;
  if (eigenvalue_count_below(op, hi) < 1) hi = op.diag.maxCoeff() + radius;
  for (int iter = 0; iter < 400; ++iter) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (hi - lo <= tol * std::max(Scalar(1), std::abs(mid))) break;
    if (mid == lo || mid == hi) break;
    if (eigenvalue_count_below(op, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  const Scalar lambda = lo + (hi - lo) / 2;
  const Scalar target = Scalar(kInverseIterationResidual) * std::max(Scalar(1), std::abs(lambda));

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  constexpr int kRestarts = 4;
  constexpr int kIterations = 60;
  for (int restart = 0; restart < kRestarts; ++restart) {
    Vector f = Vector::Ones(n);
    if (restart > 0)
      for (Eigen::Index i = 0; i < n; ++i) f[i] = Scalar(jitter(rng));
    for (int iter = 0; iter < kIterations; ++iter) {
      f = detail::solve_shifted(op, lo, f);
      f /= f.norm();
      residual = (op.apply(f) - lambda * f).norm();
      if (residual <= target) {
        detail::normalize_ground_state(f, op.dx);
        return {lambda, std::move(f), op.dx, residual};
      }
    }
  }
  std::ostringstream msg;
  msg << "inverse iteration did not converge: n = " << n << ", lambda = " << double(lambda)
      << ", residual = " << double(residual) << ", target = " << double(target);
  throw NumericError(msg.str());
}

template <typename Scalar>
Eigenpair1D<Scalar> smallest_eigenpair(const PotentialGrid<Scalar>& grid, Scalar tol = Scalar(kDefaultBisectionTol)) {
  return smallest_eigenpair(discretize(grid), tol);
}

/// Rayleigh quotient of the sine bump that vanishes at the nodes just outside
/// the sublevel run I_y. Since V <= y on the bump's support and the bump spans
/// w(y) + dx, the value never exceeds pi^2/w(y)^2 + y.
template <typename Scalar>
Scalar sine_testfunction_bound(const PotentialGrid<Scalar>& grid, Scalar y) {
  const auto run = sublevel_run(grid, y);
  if (!run) throw PreconditionError("sine test function needs a nonempty interval sublevel set");
  const auto [first, last] = *run;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(grid.n());
  const Scalar span = Scalar(last - first + 2);
  for (Eigen::Index k = first; k <= last; ++k)
    f[k - 1] = std::sin(std::numbers::pi_v<Scalar> * Scalar(k - first + 1) / span);
  return rayleigh_quotient(discretize(grid), f);
}

/// max|f| / ||f||_2 against (2 lambda_1)^{1/4}; requires V >= 0.
template <typename Scalar>
LinftyCheck<Scalar> check_linfty_bound(const Eigenpair1D<Scalar>& pair, const PotentialGrid<Scalar>& grid,
                                       Scalar slack = Scalar(1e-2)) {
  if (min_value(grid) < 0) throw PreconditionError("L-infinity bound requires a nonnegative potential");
  const Scalar norm = std::sqrt(pair.f.squaredNorm() * pair.dx);
  const Scalar ratio = pair.f.cwiseAbs().maxCoeff() / norm;
  const Scalar bound = std::pow(Scalar(2) * pair.lambda1, Scalar(0.25));
  return {ratio, bound, ratio <= bound * (Scalar(1) + slack)};
}

/// Shortest window of nodes carrying at least alpha of sum f_k^2; the leftmost
/// one wins ties.
template <typename Derived>
MassInterval shortest_mass_interval(const Eigen::MatrixBase<Derived>& f, double dx, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw ParameterError("shortest_mass_interval requires alpha in (0, 1)");
  const Eigen::Index n = f.size();
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = double(f[k]);
    prefix[k + 1] = prefix[k] + v * v;
  }
  const double total = prefix[n];
  if (total == 0) throw ParameterError("shortest_mass_interval: zero vector");
  // Exact node-count windows can land on the threshold up to rounding.
  const double need = alpha * total * (1.0 - 1e-12);

  MassInterval best{std::numeric_limits<double>::infinity(), 0, n - 1};
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && prefix[j + 1] - prefix[i] < need) ++j;
    if (j == n) break;
    const Eigen::Index count = j - i + 1;
    if (double(count) * dx < best.length) best = {double(count) * dx, i, j};
  }
  return best;
}

}  // namespace specgap
