#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bpec/channel.hpp"
#include "bpec/polygon.hpp"

namespace bpec {

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

enum class RegionForm {
  Outer,           // feasibility of the state-weighted rate constraints
  Inner,           // same plus the per-state x_s + y_s >= 1 coupling
  MemorylessFb,    // feedback region at the long-run average erasure rates
  MemorylessNoFb,  // time-sharing triangle at the long-run average rates
  Minkowski,       // pi-weighted set sum of per-state feedback regions
};

struct RegionKind {
  RegionForm form = RegionForm::Inner;
  int delay = 1;  // >= 1; shifts the erasure profile for Outer/Inner
};

// Membership queries. A rate pair is "in" if the feasibility program with
// each rate constraint relaxed by 1e-9 is nonempty, which guards against
// false negatives at exact boundary points. `profile` and `pi` must come
// from the same model.
bool in_outer(const ErasureProfile& profile, const std::vector<double>& pi,
              const RatePair& r);
bool in_inner(const ErasureProfile& profile, const std::vector<double>& pi,
              const RatePair& r);

// One point of the region boundary along direction theta: maximizes t with
// t*(cos theta, sin theta) inside the region. The optimizing per-state
// weights are returned so callers can turn a boundary point into a
// transmission policy. With `flow_balanced` (Inner only) two extra rows keep
// each user's expected coded service at least its expected diversion rate,
// which makes the derived probabilistic policy safe to run.
struct BoundaryPoint {
  double radius = 0.0;
  RatePair rate;
  std::vector<double> x;
  std::vector<double> y;
};
BoundaryPoint boundary_point(const ErasureProfile& profile,
                             const std::vector<double>& pi, double theta_rad,
                             bool inner, bool flow_balanced = false);

// Best witness for fixed rates: maximizes the uniform slack delta such that
// every rate constraint holds with margin delta (delta may come back
// negative if `r` is outside the region).
struct RegionWitness {
  double slack = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};
RegionWitness witness_for_rates(const ErasureProfile& profile,
                                const std::vector<double>& pi,
                                const RatePair& r, bool inner,
                                bool flow_balanced = false);

// Boundary polygon of the requested region. Outer/Inner sweep
// `num_directions` rays spanning [0, 90] degrees (axis intercepts included)
// and adaptively refine between rays until corners are resolved to ~1e-8, so
// the returned hull under-approximates the true region by no more than that.
// The closed forms (memoryless, Minkowski) ignore `num_directions`.
Polygon boundary(const RegionKind& kind, const ChannelModel& model,
                 int num_directions = 181);

// Feedback region of a memoryless erasure channel: all nonnegative (R1, R2)
// with R1/(1-e1) + R2/(1-e12) <= 1 and R1/(1-e12) + R2/(1-e2) <= 1.
// Degenerate channels (e1 = 1 or e2 = 1) collapse to a segment or a point.
Polygon memoryless_fb_region(double e1, double e2, double e12);

// Time-sharing triangle (0,0), (1-e1, 0), (0, 1-e2).
Polygon memoryless_nofb_region(double e1, double e2);

// pi-weighted Minkowski sum over states of the per-state (delay-1)
// memoryless feedback regions.
Polygon minkowski_region(const ChannelModel& model);

// CSV export: header `region,direction_deg,R1,R2`, then per labeled region
// one row per sweep ray (num_directions rays spanning [0, 90] degrees, so
// the axis intercepts are the first and last rows) merged with the polygon's
// own vertex directions, in ascending direction order. Deterministic bytes
// for identical inputs.
void write_boundary_csv(
    std::ostream& os,
    const std::vector<std::pair<std::string, Polygon>>& regions,
    int num_directions = 181);

}  // namespace bpec
