#include "specgap/convexdomain.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

double cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }

double bbox_diagonal(const std::vector<Point>& pts) {
  Point lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

struct Run {
  Eigen::Index first = 0;
  Eigen::Index last = -1;
  Eigen::Index count() const { return last - first + 1; }
};

Run longest_run_above(const Eigen::VectorXd& h, double threshold) {
  Run best, current;
  bool inside = false;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (h[i] >= threshold) {
      if (!inside) current = {i, i};
      current.last = i;
      inside = true;
      if (current.count() > best.count()) best = current;
    } else {
      inside = false;
    }
  }
  return best;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (const auto& p : vertices_)
    if (!p.allFinite()) throw GeometryError("polygon vertices must be finite");
  const double scale = bbox_diagonal(vertices_);
  if (!(scale > 0)) throw GeometryError("degenerate polygon");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((vertices_[i] - vertices_[j]).norm() <= 1e-14 * scale) throw GeometryError("repeated polygon vertex");

  const double eps = 1e-12 * scale * scale;
  double turning = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = next(i) - vertices_[i];
    const Point e1 = vertices_[(i + 2) % n] - next(i);
    const double c = cross(e0, e1);
    if (c < -eps) throw GeometryError("polygon is not convex and counterclockwise");
    turning += std::atan2(c, e0.dot(e1));
  }
  if (std::abs(turning - 2 * std::numbers::pi) > 1e-6) throw GeometryError("polygon boundary winds more than once");
  if (area() <= 1e-10 * scale * scale) throw GeometryError("degenerate (near-zero area) polygon");
}

double ConvexPolygon::area() const {
  double twice = 0;
  for (std::size_t i = 0; i < size(); ++i) twice += cross(vertices_[i], next(i));
  return 0.5 * twice;
}

Point ConvexPolygon::inward_normal(std::size_t i) const {
  const Point e = (next(i) - vertices_[i]).normalized();
  return {-e.y(), e.x()};
}

double ConvexPolygon::edge_distance(std::size_t i, const Point& p) const {
  return inward_normal(i).dot(p - vertices_[i]);
}

double ConvexPolygon::depth(const Point& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) d = std::min(d, edge_distance(i, p));
  return d;
}

ConvexPolygon convex_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end(),
            [](const Point& p, const Point& q) { return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y()); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) throw GeometryError("convex hull needs 3 distinct points");
  std::vector<Point> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    const Point& p = points[i];
    while (k >= t && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return ConvexPolygon(std::move(hull));
}

ConvexPolygon transformed(const ConvexPolygon& poly, double angle, const Point& offset, double scale) {
  const Eigen::Rotation2Dd rot(angle);
  std::vector<Point> out;
  out.reserve(poly.size());
  for (const auto& p : poly.vertices()) out.push_back(scale * (rot * p) + offset);
  return ConvexPolygon(std::move(out));
}

double diameter(const ConvexPolygon& poly) {
  double best = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) best = std::max(best, (poly[i] - poly[j]).squaredNorm());
  return std::sqrt(best);
}

InscribedCircle chebyshev_center(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<Point> normal(n);
  std::vector<double> offset(n);
  for (std::size_t i = 0; i < n; ++i) {
    normal[i] = poly.inward_normal(i);
    offset[i] = normal[i].dot(poly[i]);
  }
  const double scale = bbox_diagonal(poly.vertices());
  const double slack = 1e-12 * scale;

  // Tangent circle to lines i, j, k: n_m . z - r = c_m, solved by Cramer's rule.
  InscribedCircle best{Point::Zero(), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::array<std::size_t, 3> m{i, j, k};
        Eigen::Matrix3d A;
        Eigen::Vector3d rhs;
        for (int r = 0; r < 3; ++r) {
          A.row(r) << normal[m[r]].x(), normal[m[r]].y(), -1.0;
          rhs[r] = offset[m[r]];
        }
        const double det = A.determinant();
        if (std::abs(det) < 1e-12) continue;
        Eigen::Matrix3d Ar = A;
        Ar.col(2) = rhs;
        const double radius = Ar.determinant() / det;
        if (!(radius > best.radius)) continue;
        Eigen::Matrix3d Ax = A, Ay = A;
        Ax.col(0) = rhs;
        Ay.col(1) = rhs;
        const Point center(Ax.determinant() / det, Ay.determinant() / det);
        bool fits = true;
        for (std::size_t e = 0; e < n && fits; ++e) fits = normal[e].dot(center) - offset[e] >= radius - slack;
        if (fits) best = {center, radius};
      }
    }
  }
  if (!(best.radius > 0)) throw GeometryError("polygon has no inscribed circle");
  return best;
}

double inradius(const ConvexPolygon& poly) { return chebyshev_center(poly).radius; }

MinimalWidth minimal_width(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<double> widths(n);
  std::size_t j = 0;
  for (std::size_t v = 1; v < n; ++v)
    if (poly.edge_distance(0, poly[v]) > poly.edge_distance(0, poly[j])) j = v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t steps = 0; steps < n; ++steps) {
      const std::size_t nj = (j + 1) % n;
      if (poly.edge_distance(i, poly[nj]) >= poly.edge_distance(i, poly[j]))
        j = nj;
      else
        break;
    }
    widths[i] = poly.edge_distance(i, poly[j]);
  }

  const double wmin = *std::min_element(widths.begin(), widths.end());
  const auto extent = [&](std::size_t i) {
    const Point dir = (poly.next(i) - poly[i]).normalized();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : poly.vertices()) {
      lo = std::min(lo, dir.dot(p));
      hi = std::max(hi, dir.dot(p));
    }
    return hi - lo;
  };
  std::size_t chosen = n;
  double chosen_extent = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (widths[i] > wmin * (1 + 1e-3)) continue;
    const double e = extent(i);
    if (e > chosen_extent * (1 + 1e-12)) {
      chosen = i;
      chosen_extent = e;
    }
  }
  return {widths[chosen], chosen, poly.inward_normal(chosen)};
}

double HeightFunction::interpolate(const Eigen::VectorXd& column, double a, double dx, double x) {
  const double t = (x - a) / dx;
  const Eigen::Index last = column.size() - 1;
  if (t < 0 || t > double(last)) return 0.0;
  const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(t)), last - 1);
  const double s = t - double(i);
  return (1 - s) * column[i] + s * column[i + 1];
}

HeightFunction height_from_samples(double a, double b, Eigen::VectorXd h) {
  if (!(b > a) || h.size() < 5) throw ParameterError("height function needs b > a and at least 5 samples");
  HeightFunction hf{a, b, Eigen::VectorXd::Zero(h.size()), h, h};
  return hf;
}

HeightFunction height_function(const ConvexPolygon& poly, double dx) {
  if (!(dx > 0)) throw ParameterError("height function spacing must be positive");
  double a = std::numeric_limits<double>::infinity(), b = -a;
  for (const auto& p : poly.vertices()) {
    a = std::min(a, p.x());
    b = std::max(b, p.x());
  }
  const auto intervals = std::max<Eigen::Index>(4, static_cast<Eigen::Index>(std::ceil((b - a) / dx)));
  HeightFunction hf{a, b, Eigen::VectorXd(intervals + 1), Eigen::VectorXd(intervals + 1), Eigen::VectorXd(intervals + 1)};
  const double step = (b - a) / double(intervals);
  for (Eigen::Index s = 0; s <= intervals; ++s) {
    const double x = s == intervals ? b : a + double(s) * step;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly.next(i);
      if ((x - p.x()) * (x - q.x()) > 0) continue;
      if (p.x() == q.x()) {
        lo = std::min({lo, p.y(), q.y()});
        hi = std::max({hi, p.y(), q.y()});
      } else {
        const double y = p.y() + (x - p.x()) / (q.x() - p.x()) * (q.y() - p.y());
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
    hf.f1[s] = lo;
    hf.f2[s] = hi;
    hf.h[s] = hi - lo;
  }
  return hf;
}

NormalizedDomain normalize_gj(const ConvexPolygon& poly, double dx) {
  const MinimalWidth mw = minimal_width(poly);
  const double angle = std::numbers::pi / 2 - std::atan2(mw.normal.y(), mw.normal.x());
  const ConvexPolygon rotated = transformed(poly, angle);
  Point lo = rotated[0];
  for (const auto& p : rotated.vertices()) lo = lo.cwiseMin(p);
  const double scale = 1.0 / mw.width;
  ConvexPolygon normalized = transformed(poly, angle, -scale * lo, scale);
  HeightFunction hf = height_function(normalized, dx);
  return {std::move(normalized), std::move(hf), mw.width, angle};
}

PotentialGridd gj_potential(const HeightFunction& hf, double cap) {
  const double floor = 2 * hf.dx();
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  Eigen::VectorXd values(hf.samples());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    values[i] = hf.h[i] >= floor ? std::min(pi2 / (hf.h[i] * hf.h[i]), cap) : cap;
  return PotentialGridd(hf.a, hf.b, std::move(values), cap);
}

constexpr double kApexSamplingTolerance = 0.05;

Localization localization(const HeightFunction& hf) {
  // A sharp apex of h can fall between samples, so the sampled maximum may sit
  // a few dx-slopes below 1.
  const double hmax = hf.h.maxCoeff();
  if (hmax > 1.0 + 1e-3 || hmax < 1.0 - kApexSamplingTolerance)
    throw PreconditionError("localization requires max h = 1");
  const double dx = hf.dx();
  const double total = hf.b - hf.a;
  const auto run_at = [&](double L) { return longest_run_above(hf.h, 1.0 - 1.0 / (L * L) - 1e-12); };
  const auto run_length = [&](const Run& r) { return std::min(total, double(r.count() - 1) * dx); };

  const Run full = run_at(total);
  if (run_length(full) >= total) return {total, hf.node(full.first), hf.node(full.last)};
  // g(L) - L is decreasing; keep g(lo) >= lo and g(hi) < hi.
  double lo = 0, hi = total;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * total; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (run_length(run_at(mid)) >= mid)
      lo = mid;
    else
      hi = mid;
  }
  const Run r = run_at(std::max(lo, 1e-300));
  return {lo, hf.node(r.first), hf.node(r.last)};
}

double localization_scale(const HeightFunction& hf) { return localization(hf).L; }

std::string to_string(DomainFamily family) {
  switch (family) {
    case DomainFamily::cone:
      return "cone";
    case DomainFamily::stadium:
      return "stadium";
    case DomainFamily::isoTriangle:
      return "isoTriangle";
  }
  return "unknown";
}

DomainFamily domain_family_from_string(const std::string& name) {
  if (name == "cone") return DomainFamily::cone;
  if (name == "stadium") return DomainFamily::stadium;
  if (name == "isoTriangle") return DomainFamily::isoTriangle;
  throw ParameterError("unknown domain family '" + name + "'");
}

ConvexPolygon regular_polygon(int sides, double radius, const Point& center) {
  if (sides < 3) throw ParameterError("regular polygon needs at least 3 sides");
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double t = 2 * std::numbers::pi * k / sides;
    v.push_back(center + radius * Point(std::cos(t), std::sin(t)));
  }
  return ConvexPolygon(std::move(v));
}

ConvexPolygon rectangle(double width, double height, const Point& corner) {
  return ConvexPolygon({corner, corner + Point(width, 0), corner + Point(width, height), corner + Point(0, height)});
}

ConvexPolygon generate_family(DomainFamily family, double D) {
  if (!(D > 2)) throw ParameterError("domain family requires D > 2");
  switch (family) {
    case DomainFamily::cone: {
      const ConvexPolygon disk = regular_polygon(kDiskSides);
      const auto hull_with_apex = [&](double d) {
        std::vector<Point> pts = disk.vertices();
        pts.emplace_back(d, 0.0);
        return convex_hull(std::move(pts));
      };
      // Diameter grows monotonically with the apex distance once the apex is
      // outside the disk.
      double lo = 1.0, hi = D;
      for (int iter = 0; iter < 100 && hi - lo > 1e-12 * D; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (diameter(hull_with_apex(mid)) < D)
          lo = mid;
        else
          hi = mid;
      }
      return hull_with_apex(0.5 * (lo + hi));
    }
    case DomainFamily::stadium: {
      const double c = (D - 2) / 2;
      constexpr int kHalf = kDiskSides / 2;
      std::vector<Point> pts;
      for (int k = 0; k <= kHalf; ++k) {
        const double t = -std::numbers::pi / 2 + std::numbers::pi * k / kHalf;
        pts.emplace_back(c + std::cos(t), std::sin(t));
        pts.emplace_back(-c - std::cos(t), std::sin(t));
      }
      return convex_hull(std::move(pts));
    }
    case DomainFamily::isoTriangle: {
      // Base (-w, 0), (w, 0), apex (0, H) with legs D: inradius = wH/(w + D).
      const auto inr = [&](double w) { return w * std::sqrt(D * D - w * w) / (w + D); };
      if (inr(D / 2) < 1) throw ParameterError("no isosceles triangle with inradius 1 has this diameter");
      double lo = 0, hi = D / 2;
      for (int iter = 0; iter < 200 && hi - lo > 1e-15 * D; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (inr(mid) < 1)
          lo = mid;
        else
          hi = mid;
      }
      const double w = 0.5 * (lo + hi);
      const double H = std::sqrt(D * D - w * w);
      return ConvexPolygon({Point(-w, 0), Point(w, 0), Point(0, H)});
    }
  }
  throw ParameterError("unknown domain family");
}

}  // namespace specgap
