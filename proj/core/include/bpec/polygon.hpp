#pragma once

#include <vector>

namespace bpec {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Convex polygon, counter-clockwise vertex order, collinear vertices pruned.
// Degenerate instances (a point, a segment) are represented by 1 or 2
// vertices. Value type; safe to share.
class Polygon {
 public:
  Polygon() = default;

  // Convex hull (monotone chain) of an arbitrary point set.
  static Polygon hull_of(std::vector<Point> points);

  const std::vector<Point>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  bool empty() const { return vertices_.empty(); }

  bool contains(const Point& p, double tol = 1e-9) const;

  // Largest t >= 0 with t*(cos theta, sin theta) inside the polygon.
  // Meaningful for polygons that contain the origin (rate regions do).
  double ray_radius(double theta_rad) const;

  Polygon scaled(double factor) const;

  // Distance from p to the polygon boundary (0 only on the boundary).
  double boundary_distance(const Point& p) const;

 private:
  std::vector<Point> vertices_;
};

// Minkowski sum of two convex polygons via the edge-merge algorithm; the
// result has at most |a| + |b| vertices. Degenerate inputs (fewer than three
// vertices) fall back to the hull of pairwise vertex sums.
Polygon minkowski_sum(const Polygon& a, const Polygon& b);

// Symmetric Hausdorff distance between two convex polygons (as filled sets).
double hausdorff_distance(const Polygon& a, const Polygon& b);

}  // namespace bpec
