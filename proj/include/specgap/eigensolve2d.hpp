#pragma once

// Dirichlet Laplacian ground state on a convex polygon, discretized by the
// 5-point stencil on the grid cells whose centers lie strictly inside.

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "specgap/convexdomain.hpp"
#include "specgap/eigensolve1d.hpp"

namespace specgap {

struct MaskedGrid {
  double spacing;
  Point origin;  // center of cell (0, 0)
  Eigen::Index nx;
  Eigen::Index ny;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // nx x ny
  Eigen::Index activeCount;
  // Active cell k sits at (cells[k][0], cells[k][1]); neighbors[k] lists the
  // active indices of its W, E, S, N neighbors or -1 outside the domain.
  std::vector<std::array<Eigen::Index, 2>> cells;
  std::vector<std::array<Eigen::Index, 4>> neighbors;

  Point center(Eigen::Index k) const {
    return origin + spacing * Point(double(cells[k][0]), double(cells[k][1]));
  }
};

/// Cell centers at origin + spacing (i, j) with origin the lower-left corner
/// of the bounding box. Requires spacing <= inradius/4.
MaskedGrid rasterize(const ConvexPolygon& poly, double spacing);

/// Flood fill over 4-neighbors.
bool is_connected(const MaskedGrid& grid);

/// y = A x for the 5-point Dirichlet Laplacian on the active cells.
void apply_laplacian(const MaskedGrid& grid, const Eigen::VectorXd& x, Eigen::VectorXd& y);

struct Eigenpair2D {
  double lambda1;
  Eigen::VectorXd u;  // sum u_k^2 spacing^2 = 1, positive
  double spacing;
  double residual;  // ||A u - lambda1 u|| / (lambda1 ||u||)
  int outerIterations;
  std::int64_t cgIterations;
  double shift;
};

struct Eigen2DOptions {
  double tol = 1e-6;           // relative change of the Rayleigh quotient
  double residualTol = 1e-5;   // relative eigen-residual
  double cgTol = 1e-8;         // relative residual of each inner solve
  double shift = 0.0;          // must lie below lambda_1; falls back to 0 otherwise
  int maxOuter = 5000;
  std::int64_t maxCg = 200000;
};

/// Inverse power iteration on A - shift I with matrix-free conjugate
/// gradients for every solve.
Eigenpair2D smallest_eigenpair_2d(const MaskedGrid& grid, const Eigen2DOptions& options = {});

/// rho (Dm/rho)^{1/6} ||u||_inf / ||u||_2.
double vdberg_statistic(const Eigenpair2D& pair, double rho, double Dm);

/// ||u||_inf / ||u||_2 with the cell quadrature.
double sup_ratio(const Eigenpair2D& pair);

/// sup over active cells with x in I' of |u_1(x, y) - phi_1(x) sin(pi (y - f1(x))/h(x))|,
/// I' the middle half of the localization interval and u_1, phi_1 scaled to
/// maximum 1. Grid, height function and profile must share the normalized frame.
double gj_profile_error(const Eigenpair2D& pair, const MaskedGrid& grid, const HeightFunction& hf,
                        const Eigenpair1Dd& profile);

/// Everything measured on one convex domain.
struct DomainAnalysis {
  double diameter;
  double rho;
  double width;             // minimal width, the normalizing length
  double lambda1;           // Dirichlet ground energy of the input domain
  double supRatio;          // ||u||_inf / ||u||_2 of the input domain
  double statistic;         // vdberg_statistic
  double L;                 // localization scale, normalized frame
  double gjError;           // gj_profile_error, normalized frame (NaN if I' is empty)
  double lambdaNormalized;  // lambda1 * width^2
  double lambdaGJ;          // ground energy of -d^2/dx^2 + pi^2/h^2
  double balance;           // (lambdaNormalized - pi^2) L^2
  Eigen::Index activeCells;
  double residual;
};

/// Solves on the normalized domain at spacing/width, which is the input
/// domain rasterized at `spacing` up to a rigid motion, and converts back.
DomainAnalysis analyze_domain(const ConvexPolygon& poly, double spacing, const Eigen2DOptions& options = {});

}  // namespace specgap
