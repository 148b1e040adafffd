#include "bpec/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "bpec/errors.hpp"
#include "bpec/lp.hpp"

namespace bpec {

namespace {

constexpr double kMembershipRelax = 1e-9;
constexpr double kRefineTol = 1e-8;
constexpr int kMaxRefineDepth = 14;

struct RegionCoefficients {
  // Per-state weights pi_s * (1 - eps) for the four rate constraints, plus
  // the constant K = sum_s pi_s (1 - e11(s)).
  std::vector<double> w1;    // pi * (1 - e1)
  std::vector<double> w2;    // pi * (1 - e2)
  std::vector<double> w12;   // pi * (1 - e11)
  double k = 0.0;
};

RegionCoefficients coefficients(const ErasureProfile& profile,
                                const std::vector<double>& pi) {
  const int n = static_cast<int>(profile.per_state.size());
  if (static_cast<int>(pi.size()) != n) {
    throw ConfigError("profile and stationary vector disagree on state count");
  }
  RegionCoefficients c;
  c.w1.resize(n);
  c.w2.resize(n);
  c.w12.resize(n);
  for (int s = 0; s < n; ++s) {
    const StateErasure& p = profile.per_state[s];
    c.w1[s] = pi[s] * (1.0 - p.e1());
    c.w2[s] = pi[s] * (1.0 - p.e2());
    c.w12[s] = pi[s] * (1.0 - p.e11);
    c.k += c.w12[s];
  }
  return c;
}

// Rate-constraint rows over variables [x_0..x_{n-1}, y_0..y_{n-1}] offset by
// `var0` inside the program. For a fixed rate pair the rows read:
//   sum w1 x   >= R1      sum w12 (1 - y) >= R1
//   sum w2 y   >= R2      sum w12 (1 - x) >= R2
void add_rate_rows(LinearProgram& lp, const RegionCoefficients& c, int var0,
                   double r1, double r2, double relax) {
  const int n = static_cast<int>(c.w1.size());
  const int nv = lp.num_vars();
  auto row = [&](const std::vector<double>& w, bool on_y, double sign) {
    std::vector<double> r(nv, 0.0);
    for (int s = 0; s < n; ++s) r[var0 + (on_y ? n + s : s)] = sign * w[s];
    return r;
  };
  lp.add_le(row(c.w1, false, -1.0), -(r1 - relax));
  lp.add_le(row(c.w12, true, 1.0), c.k - r1 + relax);
  lp.add_le(row(c.w2, true, -1.0), -(r2 - relax));
  lp.add_le(row(c.w12, false, 1.0), c.k - r2 + relax);
}

void add_coupling_rows(LinearProgram& lp, int var0, int n) {
  for (int s = 0; s < n; ++s) {
    std::vector<double> row(lp.num_vars(), 0.0);
    row[var0 + s] = -1.0;
    row[var0 + n + s] = -1.0;
    lp.add_le(std::move(row), -1.0);
  }
}

// Keeps each user's expected coded service at or above its expected
// diversion rate: sum w1 x + sum w12 y >= K (+ slack) and symmetrically.
void add_flow_balance_rows(LinearProgram& lp, const RegionCoefficients& c,
                           int var0, int slack_var) {
  const int n = static_cast<int>(c.w1.size());
  const int nv = lp.num_vars();
  std::vector<double> row1(nv, 0.0);
  std::vector<double> row2(nv, 0.0);
  for (int s = 0; s < n; ++s) {
    row1[var0 + s] = -c.w1[s];
    row1[var0 + n + s] = -c.w12[s];
    row2[var0 + s] = -c.w12[s];
    row2[var0 + n + s] = -c.w2[s];
  }
  if (slack_var >= 0) {
    row1[slack_var] = 1.0;
    row2[slack_var] = 1.0;
  }
  lp.add_le(std::move(row1), -c.k);
  lp.add_le(std::move(row2), -c.k);
}

bool membership(const ErasureProfile& profile, const std::vector<double>& pi,
                const RatePair& r, bool inner) {
  const int n = static_cast<int>(profile.per_state.size());
  RegionCoefficients c = coefficients(profile, pi);
  LinearProgram lp(2 * n);
  for (int v = 0; v < 2 * n; ++v) lp.set_bounds(v, 0.0, 1.0);
  add_rate_rows(lp, c, 0, r.r1, r.r2, kMembershipRelax);
  if (inner) add_coupling_rows(lp, 0, n);
  return feasible(lp);
}

Polygon sweep_region(const ErasureProfile& profile,
                     const std::vector<double>& pi, bool inner,
                     int num_directions) {
  if (num_directions < 8) {
    throw ConfigError("boundary sweep needs at least 8 directions");
  }
  struct RayPoint {
    double theta;
    Point p;
  };
  std::vector<RayPoint> rays;
  auto solve_ray = [&](double theta) {
    BoundaryPoint bp = boundary_point(profile, pi, theta, inner);
    return RayPoint{theta, Point{bp.rate.r1, bp.rate.r2}};
  };

  const double quarter = std::numbers::pi / 2.0;
  for (int k = 0; k < num_directions; ++k) {
    rays.push_back(solve_ray(quarter * k / (num_directions - 1)));
  }

  // Corners of the true region fall between uniformly swept rays; refine
  // until every midpoint lies on the chord of its neighbors.
  std::vector<Point> points;
  auto chord_deviation = [](const Point& a, const Point& b, const Point& m) {
    double vx = b.x - a.x;
    double vy = b.y - a.y;
    double len = std::hypot(vx, vy);
    if (len < 1e-15) return std::hypot(m.x - a.x, m.y - a.y);
    return std::abs((m.x - a.x) * vy - (m.y - a.y) * vx) / len;
  };
  auto refine = [&](auto&& self, const RayPoint& a, const RayPoint& b,
                    int depth) -> void {
    if (depth >= kMaxRefineDepth) return;
    RayPoint mid = solve_ray(0.5 * (a.theta + b.theta));
    if (chord_deviation(a.p, b.p, mid.p) <= kRefineTol) return;
    self(self, a, mid, depth + 1);
    points.push_back(mid.p);
    self(self, mid, b, depth + 1);
  };

  points.push_back(Point{0.0, 0.0});
  for (std::size_t k = 0; k + 1 < rays.size(); ++k) {
    points.push_back(rays[k].p);
    refine(refine, rays[k], rays[k + 1], 0);
  }
  points.push_back(rays.back().p);
  return Polygon::hull_of(std::move(points));
}

void check_memoryless_params(double e1, double e2, double e12) {
  const double slack = 1e-9;
  if (e1 < -slack || e1 > 1.0 + slack || e2 < -slack || e2 > 1.0 + slack ||
      e12 < -slack || e12 > std::min(e1, e2) + slack ||
      e1 + e2 - e12 > 1.0 + slack) {
    throw ConfigError("memoryless erasure parameters are inconsistent");
  }
}

}  // namespace

bool in_outer(const ErasureProfile& profile, const std::vector<double>& pi,
              const RatePair& r) {
  return membership(profile, pi, r, false);
}

bool in_inner(const ErasureProfile& profile, const std::vector<double>& pi,
              const RatePair& r) {
  return membership(profile, pi, r, true);
}

BoundaryPoint boundary_point(const ErasureProfile& profile,
                             const std::vector<double>& pi, double theta_rad,
                             bool inner, bool flow_balanced) {
  if (flow_balanced && !inner) {
    throw ConfigError("flow-balanced boundary points require the inner form");
  }
  const int n = static_cast<int>(profile.per_state.size());
  RegionCoefficients c = coefficients(profile, pi);
  const double dx = std::cos(theta_rad);
  const double dy = std::sin(theta_rad);

  // Variables: [t, x_0..x_{n-1}, y_0..y_{n-1}]; maximize t subject to
  // (t dx, t dy) satisfying the four rate constraints.
  LinearProgram lp(1 + 2 * n);
  std::vector<double> obj(1 + 2 * n, 0.0);
  obj[0] = 1.0;
  lp.set_objective(obj);
  for (int v = 1; v <= 2 * n; ++v) lp.set_bounds(v, 0.0, 1.0);

  auto rate_row = [&](const std::vector<double>& w, bool on_y, double sign,
                      double dir, double rhs) {
    std::vector<double> row(1 + 2 * n, 0.0);
    row[0] = dir;
    for (int s = 0; s < n; ++s) row[1 + (on_y ? n + s : s)] = sign * w[s];
    lp.add_le(std::move(row), rhs);
  };
  rate_row(c.w1, false, -1.0, dx, 0.0);
  rate_row(c.w12, true, 1.0, dx, c.k);
  rate_row(c.w2, true, -1.0, dy, 0.0);
  rate_row(c.w12, false, 1.0, dy, c.k);
  if (inner) add_coupling_rows(lp, 1, n);
  if (flow_balanced) add_flow_balance_rows(lp, c, 1, -1);

  LpOutcome out = solve(lp);
  if (out.status != LpStatus::Optimal) {
    throw NumericalError("boundary ray program did not solve");
  }
  BoundaryPoint bp;
  bp.radius = out.value;
  bp.rate = RatePair{out.value * dx, out.value * dy};
  bp.x.assign(out.point.begin() + 1, out.point.begin() + 1 + n);
  bp.y.assign(out.point.begin() + 1 + n, out.point.end());
  return bp;
}

RegionWitness witness_for_rates(const ErasureProfile& profile,
                                const std::vector<double>& pi,
                                const RatePair& r, bool inner,
                                bool flow_balanced) {
  if (flow_balanced && !inner) {
    throw ConfigError("flow-balanced witnesses require the inner form");
  }
  const int n = static_cast<int>(profile.per_state.size());
  RegionCoefficients c = coefficients(profile, pi);

  // Variables: [delta, x, y]; maximize the uniform constraint slack delta.
  LinearProgram lp(1 + 2 * n);
  std::vector<double> obj(1 + 2 * n, 0.0);
  obj[0] = 1.0;
  lp.set_objective(obj);
  lp.set_bounds(0, -1.0, 1.0);
  for (int v = 1; v <= 2 * n; ++v) lp.set_bounds(v, 0.0, 1.0);

  auto rate_row = [&](const std::vector<double>& w, bool on_y, double sign,
                      double rhs) {
    std::vector<double> row(1 + 2 * n, 0.0);
    row[0] = 1.0;
    for (int s = 0; s < n; ++s) row[1 + (on_y ? n + s : s)] = sign * w[s];
    lp.add_le(std::move(row), rhs);
  };
  rate_row(c.w1, false, -1.0, -r.r1);
  rate_row(c.w12, true, 1.0, c.k - r.r1);
  rate_row(c.w2, true, -1.0, -r.r2);
  rate_row(c.w12, false, 1.0, c.k - r.r2);
  if (inner) add_coupling_rows(lp, 1, n);
  if (flow_balanced) add_flow_balance_rows(lp, c, 1, 0);

  LpOutcome out = solve(lp);
  if (out.status != LpStatus::Optimal) {
    throw NumericalError("witness program did not solve");
  }
  RegionWitness w;
  w.slack = out.value;
  w.x.assign(out.point.begin() + 1, out.point.begin() + 1 + n);
  w.y.assign(out.point.begin() + 1 + n, out.point.end());
  return w;
}

Polygon boundary(const RegionKind& kind, const ChannelModel& model,
                 int num_directions) {
  if (kind.delay < 1) throw ConfigError("region delay must be >= 1");
  switch (kind.form) {
    case RegionForm::Outer:
    case RegionForm::Inner: {
      ErasureProfile profile = erasure_profile(model, kind.delay);
      std::vector<double> pi = stationary_distribution(model);
      return sweep_region(profile, pi, kind.form == RegionForm::Inner,
                          num_directions);
    }
    case RegionForm::MemorylessFb: {
      LongRunErasure e = long_run_erasure(model);
      return memoryless_fb_region(e.eps1, e.eps2, e.eps12);
    }
    case RegionForm::MemorylessNoFb: {
      LongRunErasure e = long_run_erasure(model);
      return memoryless_nofb_region(e.eps1, e.eps2);
    }
    case RegionForm::Minkowski:
      return minkowski_region(model);
  }
  throw ConfigError("unknown region kind");
}

Polygon memoryless_fb_region(double e1, double e2, double e12) {
  check_memoryless_params(e1, e2, e12);
  const double a1 = std::max(0.0, 1.0 - e1);
  const double a2 = std::max(0.0, 1.0 - e2);
  const double a12 = std::max(0.0, 1.0 - e12);

  std::vector<Point> pts = {{0.0, 0.0}, {a1, 0.0}, {0.0, a2}};
  // Corner where the two boundary faces intersect; when the faces coincide
  // (e1 = e2 = e12) the determinant vanishes and the corner is redundant.
  double det = a12 * a12 - a1 * a2;
  if (det > 1e-15) {
    pts.push_back(Point{a1 * a12 * (a12 - a2) / det,
                        a12 * a2 * (a12 - a1) / det});
  }
  return Polygon::hull_of(std::move(pts));
}

Polygon memoryless_nofb_region(double e1, double e2) {
  if (e1 < 0.0 || e1 > 1.0 || e2 < 0.0 || e2 > 1.0) {
    throw ConfigError("erasure probabilities must lie in [0, 1]");
  }
  return Polygon::hull_of(
      {{0.0, 0.0}, {1.0 - e1, 0.0}, {0.0, 1.0 - e2}});
}

Polygon minkowski_region(const ChannelModel& model) {
  std::vector<double> pi = stationary_distribution(model);
  ErasureProfile profile = erasure_profile(model, 1);
  Polygon acc;
  for (int s = 0; s < model.num_states(); ++s) {
    const StateErasure& p = profile.per_state[s];
    Polygon part =
        memoryless_fb_region(p.e1(), p.e2(), p.e11).scaled(pi[s]);
    acc = (s == 0) ? part : minkowski_sum(acc, part);
  }
  return acc;
}

void write_boundary_csv(
    std::ostream& os,
    const std::vector<std::pair<std::string, Polygon>>& regions,
    int num_directions) {
  if (num_directions < 2) {
    throw ConfigError("csv export needs at least 2 directions");
  }
  os << "region,direction_deg,R1,R2\n";
  char buf[128];
  for (const auto& [label, poly] : regions) {
    struct Row {
      double angle_deg;
      Point p;
    };
    std::vector<Row> rows;
    for (int k = 0; k < num_directions; ++k) {
      double theta = (std::numbers::pi / 2.0) * k / (num_directions - 1);
      double t = poly.ray_radius(theta);
      rows.push_back(Row{90.0 * k / (num_directions - 1),
                         Point{t * std::cos(theta), t * std::sin(theta)}});
    }
    for (const Point& v : poly.vertices()) {
      if (std::hypot(v.x, v.y) < 1e-15) continue;  // origin closes the region
      rows.push_back(
          Row{std::atan2(v.y, v.x) * 180.0 / std::numbers::pi, v});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return a.angle_deg < b.angle_deg;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const Row& a, const Row& b) {
                             return std::abs(a.angle_deg - b.angle_deg) < 1e-9;
                           }),
               rows.end());
    for (const Row& row : rows) {
      std::snprintf(buf, sizeof(buf), "%s,%.6f,%.15g,%.15g\n", label.c_str(),
                    row.angle_deg, row.p.x, row.p.y);
      os << buf;
    }
  }
}

}  // namespace bpec
