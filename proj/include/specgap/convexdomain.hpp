#pragma once

// Convex polygon geometry and the reduction of a convex planar domain to the
// one-dimensional operator -d^2/dx^2 + pi^2/h(x)^2.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "specgap/potential.hpp"

namespace specgap {

using Point = Eigen::Vector2d;

class ConvexPolygon {
 public:
  /// Vertices in counterclockwise order; throws GeometryError otherwise.
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const Point& next(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  double area() const;
  /// Unit inward normal of edge i -> i+1.
  Point inward_normal(std::size_t i) const;
  /// Signed distance from p to the line of edge i, positive inside.
  double edge_distance(std::size_t i, const Point& p) const;
  /// min over edges of edge_distance; positive strictly inside.
  double depth(const Point& p) const;

 private:
  std::vector<Point> vertices_;
};

/// Andrew's monotone chain; collinear points are dropped.
ConvexPolygon convex_hull(std::vector<Point> points);

/// Image of poly under p -> scale * R(angle) p + offset.
ConvexPolygon transformed(const ConvexPolygon& poly, double angle, const Point& offset = Point::Zero(),
                          double scale = 1.0);

double diameter(const ConvexPolygon& poly);

struct InscribedCircle {
  Point center;
  double radius;
};

/// Largest inscribed disk, by enumerating the circles tangent to three edge
/// lines and keeping the largest one that fits.
InscribedCircle chebyshev_center(const ConvexPolygon& poly);
double inradius(const ConvexPolygon& poly);

struct MinimalWidth {
  double width;
  std::size_t edge;  // supporting edge of the minimal strip
  Point normal;      // inward unit normal of that edge
};

/// Rotating calipers over edge normals. Directions whose width is within
/// a relative 1e-3 of the minimum are tied; the tie goes to the direction with
/// the longest orthogonal extent.
MinimalWidth minimal_width(const ConvexPolygon& poly);

/// Vertical extent of a domain sampled at x_i = a + i dx, i = 0 .. n+1.
struct HeightFunction {
  double a;
  double b;
  Eigen::VectorXd f1;  // lower boundary graph
  Eigen::VectorXd f2;  // upper boundary graph
  Eigen::VectorXd h;   // f2 - f1

  Eigen::Index samples() const { return h.size(); }
  double dx() const { return (b - a) / double(h.size() - 1); }
  double node(Eigen::Index i) const { return a + double(i) * dx(); }
  /// Linear interpolation of a sampled column at x, zero outside [a, b].
  static double interpolate(const Eigen::VectorXd& column, double a, double dx, double x);
};

/// Height function from samples of h alone (f1 = 0, f2 = h).
HeightFunction height_from_samples(double a, double b, Eigen::VectorXd h);

/// Vertical-line clipping of the polygon on a uniform grid of spacing <= dx.
HeightFunction height_function(const ConvexPolygon& poly, double dx);

struct NormalizedDomain {
  ConvexPolygon polygon;
  HeightFunction height;
  double width;     // minimal width of the input; the dilation factor is 1/width
  double rotation;  // radians applied before translation and scaling
};

inline constexpr double kDefaultHeightSpacing = 1.0 / 128.0;

/// Rotate so the minimal-width direction is vertical, translate so the domain
/// touches x = 0 and y = 0, and dilate so its vertical projection is [0, 1].
NormalizedDomain normalize_gj(const ConvexPolygon& poly, double dx = kDefaultHeightSpacing);

/// pi^2/h_i^2 where h_i >= 2 dx, cap elsewhere.
PotentialGridd gj_potential(const HeightFunction& hf, double cap = kDefaultCap);

struct Localization {
  double L;
  double start;  // longest interval with h >= 1 - 1/L^2
  double end;
};

/// Fixed point L = g(L), g(L) the length of the longest run with
/// h >= 1 - 1/L^2, capped at b - a. Requires max h = 1.
Localization localization(const HeightFunction& hf);
double localization_scale(const HeightFunction& hf);

enum class DomainFamily { cone, stadium, isoTriangle };

std::string to_string(DomainFamily family);
DomainFamily domain_family_from_string(const std::string& name);

inline constexpr int kDiskSides = 256;

/// Inradius-1 members of the test families with diameter D (D > 2):
///   cone        hull of a unit 256-gon and an apex placed so diameter = D
///   stadium     unit half disks joined by a (D - 2) x 2 rectangle
///   isoTriangle isosceles triangle with legs D and inradius 1
ConvexPolygon generate_family(DomainFamily family, double D);

/// Regular k-gon with circumradius r centred at c.
ConvexPolygon regular_polygon(int sides, double radius = 1.0, const Point& center = Point::Zero());
ConvexPolygon rectangle(double width, double height, const Point& corner = Point::Zero());

}  // namespace specgap
