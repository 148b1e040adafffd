#include "bpec/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace bpec {

namespace {

constexpr double kCollinearEps = 1e-12;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

double segment_distance(const Point& p, const Point& a, const Point& b) {
  double vx = b.x - a.x;
  double vy = b.y - a.y;
  double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  }
  double dx = p.x - (a.x + t * vx);
  double dy = p.y - (a.y + t * vy);
  return std::hypot(dx, dy);
}

// Edge direction ordering over [0, 2pi), for the Minkowski edge merge.
int angle_half(const Point& v) {
  return (v.y > 0.0 || (v.y == 0.0 && v.x > 0.0)) ? 0 : 1;
}

bool angle_less(const Point& u, const Point& v) {
  int hu = angle_half(u);
  int hv = angle_half(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0.0;
}

}  // namespace

Polygon Polygon::hull_of(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point& a, const Point& b) {
                             return a.x == b.x && a.y == b.y;
                           }),
               points.end());

  Polygon poly;
  const int n = static_cast<int>(points.size());
  if (n < 3) {
    poly.vertices_ = std::move(points);
    return poly;
  }

  std::vector<Point> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 &&
           cross(hull[k - 2], hull[k - 1], points[i]) <= kCollinearEps) {
      --k;
    }
    hull[k++] = points[i];
  }
  int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper chain
    while (k >= lower &&
           cross(hull[k - 2], hull[k - 1], points[i]) <= kCollinearEps) {
      --k;
    }
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  poly.vertices_ = std::move(hull);
  return poly;
}

bool Polygon::contains(const Point& p, double tol) const {
  const int n = size();
  if (n == 0) return false;
  if (n == 1) {
    return std::hypot(p.x - vertices_[0].x, p.y - vertices_[0].y) <= tol;
  }
  if (n == 2) return segment_distance(p, vertices_[0], vertices_[1]) <= tol;
  for (int i = 0; i < n; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % n];
    double scale = std::max(1.0, std::hypot(b.x - a.x, b.y - a.y));
    if (cross(a, b, p) < -tol * scale) return false;
  }
  return true;
}

double Polygon::ray_radius(double theta_rad) const {
  const Point dir{std::cos(theta_rad), std::sin(theta_rad)};
  const int n = size();
  if (n == 0) return 0.0;
  if (n == 1) {
    const Point& v = vertices_[0];
    double along = v.x * dir.x + v.y * dir.y;
    if (std::abs(cross(v, dir)) <= 1e-12 * std::max(1.0, std::hypot(v.x, v.y)) &&
        along >= 0.0) {
      return along;
    }
    return 0.0;
  }
  if (n == 2) {
    // Solve origin + t*dir = a + u*(b - a) with u in [0, 1], t >= 0.
    const Point& a = vertices_[0];
    const Point& b = vertices_[1];
    Point e{b.x - a.x, b.y - a.y};
    double det = cross(dir, e);
    if (std::abs(det) > 1e-14) {
      double t = cross(a, e) / det;
      double u = cross(a, dir) / det;
      if (t >= 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12) return t;
      return 0.0;
    }
    double best = 0.0;
    for (const Point& v : {a, b}) {
      double along = v.x * dir.x + v.y * dir.y;
      if (std::abs(cross(v, dir)) <= 1e-12 && along > best) best = along;
    }
    return best;
  }

  // Intersection of the edge halfplanes along the ray; valid because region
  // polygons contain the origin.
  double t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % n];
    Point normal{b.y - a.y, a.x - b.x};  // outward for CCW order
    double denom = normal.x * dir.x + normal.y * dir.y;
    if (denom > 1e-14) {
      t = std::min(t, (normal.x * a.x + normal.y * a.y) / denom);
    }
  }
  if (!std::isfinite(t)) return 0.0;
  return std::max(t, 0.0);
}

Polygon Polygon::scaled(double factor) const {
  Polygon out = *this;
  for (Point& v : out.vertices_) {
    v.x *= factor;
    v.y *= factor;
  }
  if (factor == 0.0 && !out.vertices_.empty()) {
    out.vertices_ = {Point{0.0, 0.0}};
  }
  return out;
}

double Polygon::boundary_distance(const Point& p) const {
  const int n = size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (n == 1) return std::hypot(p.x - vertices_[0].x, p.y - vertices_[0].y);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    best = std::min(
        best, segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return best;
}

Polygon minkowski_sum(const Polygon& a, const Polygon& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < 3 || b.size() < 3) {
    std::vector<Point> sums;
    sums.reserve(static_cast<std::size_t>(a.size()) * b.size());
    for (const Point& p : a.vertices()) {
      for (const Point& q : b.vertices()) {
        sums.push_back(Point{p.x + q.x, p.y + q.y});
      }
    }
    return Polygon::hull_of(std::move(sums));
  }

  auto bottom_start = [](const std::vector<Point>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
      if (v[i].y < v[best].y ||
          (v[i].y == v[best].y && v[i].x < v[best].x)) {
        best = i;
      }
    }
    std::vector<Point> out(v.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      out[i] = v[(best + i) % v.size()];
    }
    return out;
  };

  std::vector<Point> va = bottom_start(a.vertices());
  std::vector<Point> vb = bottom_start(b.vertices());
  const int na = static_cast<int>(va.size());
  const int nb = static_cast<int>(vb.size());
  auto edge = [](const std::vector<Point>& v, int i) {
    const Point& p = v[i % v.size()];
    const Point& q = v[(i + 1) % v.size()];
    return Point{q.x - p.x, q.y - p.y};
  };

  std::vector<Point> merged;
  merged.reserve(static_cast<std::size_t>(na) + nb);
  Point cur{va[0].x + vb[0].x, va[0].y + vb[0].y};
  int i = 0;
  int j = 0;
  while (i < na || j < nb) {
    merged.push_back(cur);
    if (j == nb) {
      Point e = edge(va, i++);
      cur = {cur.x + e.x, cur.y + e.y};
    } else if (i == na) {
      Point e = edge(vb, j++);
      cur = {cur.x + e.x, cur.y + e.y};
    } else {
      Point ea = edge(va, i);
      Point eb = edge(vb, j);
      if (angle_less(ea, eb)) {
        cur = {cur.x + ea.x, cur.y + ea.y};
        ++i;
      } else if (angle_less(eb, ea)) {
        cur = {cur.x + eb.x, cur.y + eb.y};
        ++j;
      } else {
        cur = {cur.x + ea.x + eb.x, cur.y + ea.y + eb.y};
        ++i;
        ++j;
      }
    }
  }
  return Polygon::hull_of(std::move(merged));
}

double hausdorff_distance(const Polygon& a, const Polygon& b) {
  auto directed = [](const Polygon& from, const Polygon& to) {
    double worst = 0.0;
    for (const Point& v : from.vertices()) {
      double d = to.contains(v, 1e-12) ? 0.0 : to.boundary_distance(v);
      worst = std::max(worst, d);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace bpec
