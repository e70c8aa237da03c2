#include "specgap/eigensolve2d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

struct IndefiniteShift : NumericError {
  using NumericError::NumericError;
};

// (A - shift I) x = b from the warm start in x. Returns the iteration count.
std::int64_t conjugate_gradient(const MaskedGrid& grid, double shift, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                                double tol, std::int64_t max_iterations) {
  Eigen::VectorXd Ap(b.size());
  apply_laplacian(grid, x, Ap);
  Eigen::VectorXd r = b - (Ap - shift * x);
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const double target = tol * tol * b.squaredNorm();
  std::int64_t it = 0;
  for (; it < max_iterations && rs > target; ++it) {
    apply_laplacian(grid, p, Ap);
    Ap -= shift * p;
    const double curvature = p.dot(Ap);
    if (!(curvature > 0)) throw IndefiniteShift("conjugate gradient met non-positive curvature");
    const double step = rs / curvature;
    x += step * p;
    r -= step * Ap;
    const double rs_next = r.squaredNorm();
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  if (rs > target) {
    std::ostringstream msg;
    msg << "conjugate gradient stagnated after " << it << " iterations: relative residual "
        << std::sqrt(rs / b.squaredNorm()) << " > " << tol << " on " << grid.activeCount << " cells";
    throw NumericError(msg.str());
  }
  return it;
}

Eigenpair2D inverse_iteration(const MaskedGrid& grid, const Eigen2DOptions& options, double shift) {
  const Eigen::Index n = grid.activeCount;
  Eigen::VectorXd u = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  Eigen::VectorXd Au(n), x(n);
  apply_laplacian(grid, u, Au);
  double lambda = u.dot(Au);
  std::int64_t cg_total = 0;
  double residual = std::numeric_limits<double>::infinity();
  for (int outer = 1; outer <= options.maxOuter; ++outer) {
    if (lambda > shift)
      x = u / (lambda - shift);
    else
      x.setZero();
    cg_total += conjugate_gradient(grid, shift, u, x, options.cgTol, options.maxCg);
    u = x / x.norm();
    apply_laplacian(grid, u, Au);
    const double next = u.dot(Au);
    residual = (Au - next * u).norm() / next;
    const bool stable = std::abs(next - lambda) <= options.tol * next;
    lambda = next;
    if (stable && residual <= options.residualTol) {
      if (u.sum() < 0) u = -u;
      u /= grid.spacing;  // sum u^2 h^2 = 1
      return {lambda, std::move(u), grid.spacing, residual, outer, cg_total, shift};
    }
  }
  std::ostringstream msg;
  msg << "inverse iteration did not converge in " << options.maxOuter << " steps: lambda = " << lambda
      << ", residual = " << residual << ", cg iterations = " << cg_total;
  throw NumericError(msg.str());
}

}  // namespace

MaskedGrid rasterize(const ConvexPolygon& poly, double spacing) {
  if (!(spacing > 0)) throw ParameterError("rasterize: spacing must be positive");
  if (spacing > inradius(poly) / 4) throw ParameterError("rasterize: spacing must not exceed inradius/4");

  Point lo = poly[0], hi = poly[0];
  for (const auto& p : poly.vertices()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  MaskedGrid grid;
  grid.spacing = spacing;
  grid.origin = lo;
  grid.nx = static_cast<Eigen::Index>(std::floor((hi.x() - lo.x()) / spacing)) + 1;
  grid.ny = static_cast<Eigen::Index>(std::floor((hi.y() - lo.y()) / spacing)) + 1;
  grid.mask.setConstant(grid.nx, grid.ny, false);

  std::vector<Point> normal(poly.size());
  std::vector<double> offset(poly.size());
  for (std::size_t e = 0; e < poly.size(); ++e) {
    normal[e] = poly.inward_normal(e);
    offset[e] = normal[e].dot(poly[e]);
  }
  const double eps = 1e-9 * spacing;
  Eigen::Array<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> index =
      Eigen::Array<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic>::Constant(grid.nx, grid.ny, -1);
  for (Eigen::Index j = 0; j < grid.ny; ++j) {
    for (Eigen::Index i = 0; i < grid.nx; ++i) {
      const Point c = lo + spacing * Point(double(i), double(j));
      bool inside = true;
      for (std::size_t e = 0; e < poly.size() && inside; ++e) inside = normal[e].dot(c) - offset[e] > eps;
      if (!inside) continue;
      grid.mask(i, j) = true;
      index(i, j) = static_cast<Eigen::Index>(grid.cells.size());
      grid.cells.push_back({i, j});
    }
  }
  grid.activeCount = static_cast<Eigen::Index>(grid.cells.size());
  if (grid.activeCount < 1) throw GeometryError("rasterize: no cell center inside the polygon");

  const auto at = [&](Eigen::Index i, Eigen::Index j) -> Eigen::Index {
    if (i < 0 || j < 0 || i >= grid.nx || j >= grid.ny) return -1;
    return index(i, j);
  };
  grid.neighbors.reserve(grid.cells.size());
  for (const auto& [i, j] : grid.cells) grid.neighbors.push_back({at(i - 1, j), at(i + 1, j), at(i, j - 1), at(i, j + 1)});
  if (!is_connected(grid)) throw GeometryError("rasterize: mask is not 4-connected");
  return grid;
}

bool is_connected(const MaskedGrid& grid) {
  if (grid.activeCount == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(grid.activeCount), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index reached = 1;
  while (!stack.empty()) {
    const Eigen::Index k = stack.back();
    stack.pop_back();
    for (Eigen::Index m : grid.neighbors[k]) {
      if (m < 0 || seen[m]) continue;
      seen[m] = 1;
      ++reached;
      stack.push_back(m);
    }
  }
  return reached == grid.activeCount;
}

void apply_laplacian(const MaskedGrid& grid, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const double inv = 1.0 / (grid.spacing * grid.spacing);
  y.resize(x.size());
  for (Eigen::Index k = 0; k < grid.activeCount; ++k) {
    const auto& nb = grid.neighbors[k];
    double s = 4.0 * x[k];
    for (Eigen::Index m : nb)
      if (m >= 0) s -= x[m];
    y[k] = s * inv;
  }
}

Eigenpair2D smallest_eigenpair_2d(const MaskedGrid& grid, const Eigen2DOptions& options) {
  if (!(options.tol > 0) || !(options.cgTol > 0) || !(options.residualTol > 0))
    throw ParameterError("smallest_eigenpair_2d requires positive tolerances");
  if (options.shift != 0.0) {
    try {
      return inverse_iteration(grid, options, options.shift);
    } catch (const IndefiniteShift&) {
      // The shift was not below lambda_1; the unshifted operator is always SPD.
    }
  }
  return inverse_iteration(grid, options, 0.0);
}

double sup_ratio(const Eigenpair2D& pair) {
  const double norm = pair.u.norm() * pair.spacing;
  return pair.u.cwiseAbs().maxCoeff() / norm;
}

double vdberg_statistic(const Eigenpair2D& pair, double rho, double Dm) {
  if (!(rho > 0) || !(Dm > 0)) throw ParameterError("vdberg_statistic requires rho, D > 0");
  return sup_ratio(pair) * rho * std::pow(Dm / rho, 1.0 / 6.0);
}

double gj_profile_error(const Eigenpair2D& pair, const MaskedGrid& grid, const HeightFunction& hf,
                        const Eigenpair1Dd& profile) {
  if (profile.f.size() + 2 != hf.samples()) throw PreconditionError("profile and height function grids differ");
  const Localization loc = localization(hf);
  const double middle = 0.5 * (loc.start + loc.end);
  const double quarter = 0.25 * (loc.end - loc.start);
  const double left = middle - quarter, right = middle + quarter;

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(hf.samples());
  phi.segment(1, profile.f.size()) = profile.f / profile.f.maxCoeff();
  const double umax = pair.u.maxCoeff();
  const double dx = hf.dx();

  double worst = -1;
  for (Eigen::Index k = 0; k < grid.activeCount; ++k) {
    const Point c = grid.center(k);
    if (c.x() < left || c.x() > right) continue;
    const double h = HeightFunction::interpolate(hf.h, hf.a, dx, c.x());
    if (!(h > 0)) continue;
    const double f1 = HeightFunction::interpolate(hf.f1, hf.a, dx, c.x());
    const double model = HeightFunction::interpolate(phi, hf.a, dx, c.x()) * std::sin(std::numbers::pi * (c.y() - f1) / h);
    worst = std::max(worst, std::abs(pair.u[k] / umax - model));
  }
  if (worst < 0) throw PreconditionError("gj_profile_error: no active cell in the middle of the localization interval");
  return worst;
}

DomainAnalysis analyze_domain(const ConvexPolygon& poly, double spacing, const Eigen2DOptions& options) {
  DomainAnalysis out{};
  out.diameter = diameter(poly);
  out.rho = inradius(poly);
  const NormalizedDomain nd = normalize_gj(poly, spacing);
  out.width = nd.width;
  const double h = spacing / nd.width;
  const HeightFunction hf = height_function(nd.polygon, h);
  const MaskedGrid grid = rasterize(nd.polygon, h);
  out.activeCells = grid.activeCount;

  // Convex planar domains satisfy lambda_1 >= pi^2 / (4 rho^2); a margin keeps
  // the shift below the discrete ground energy.
  Eigen2DOptions opts = options;
  if (opts.shift == 0.0) {
    const double rho_normalized = out.rho / nd.width;
    opts.shift = 0.8 * kPi2 / (4 * rho_normalized * rho_normalized);
  }
  const Eigenpair2D pair = smallest_eigenpair_2d(grid, opts);
  out.residual = pair.residual;
  out.lambdaNormalized = pair.lambda1;
  out.lambda1 = pair.lambda1 / (nd.width * nd.width);
  out.supRatio = sup_ratio(pair) / nd.width;
  out.statistic = out.supRatio * out.rho * std::pow(out.diameter / out.rho, 1.0 / 6.0);

  const Eigenpair1Dd profile = smallest_eigenpair(gj_potential(hf));
  out.lambdaGJ = profile.lambda1;
  out.L = localization_scale(hf);
  out.balance = (out.lambdaNormalized - kPi2) * out.L * out.L;
  try {
    out.gjError = gj_profile_error(pair, grid, hf, profile);
  } catch (const PreconditionError&) {
    out.gjError = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace specgap
