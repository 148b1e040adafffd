#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bpec/channel.hpp"
#include "bpec/lp.hpp"
#include "bpec/regions.hpp"

namespace bpec::testing {

// Independent oracle for the stationary distribution: plain power iteration.
inline std::vector<double> power_iteration_pi(const ChannelModel& model,
                                              int iterations = 20000) {
  const int n = model.num_states();
  std::vector<double> pi(n, 1.0 / n);
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) next[j] += pi[i] * model.transition()[i][j];
    }
    pi = std::move(next);
  }
  return pi;
}

// Independent oracle for small LPs: enumerate candidate vertices from every
// n-subset of the constraints (rows plus bounds), keep the feasible ones,
// and take the best objective. Assumes the program is bounded.
struct BruteLpResult {
  bool feasible = false;
  double value = 0.0;
};

inline BruteLpResult brute_force_lp(const LinearProgram& lp) {
  const int n = lp.num_vars();
  std::vector<std::vector<double>> rows = lp.lhs();
  std::vector<double> rhs = lp.rhs();
  for (int i = 0; i < n; ++i) {
    std::vector<double> low(n, 0.0);
    low[i] = -1.0;
    rows.push_back(low);
    rhs.push_back(-lp.lower()[i]);
    if (std::isfinite(lp.upper()[i])) {
      std::vector<double> up(n, 0.0);
      up[i] = 1.0;
      rows.push_back(up);
      rhs.push_back(lp.upper()[i]);
    }
  }
  const int m = static_cast<int>(rows.size());

  auto solve_square = [&](const std::vector<int>& idx,
                          std::vector<double>& x) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a[r][c] = rows[idx[r]][c];
      a[r][n] = rhs[idx[r]];
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      if (std::abs(a[piv][col]) < 1e-9) return false;
      std::swap(a[col], a[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        double f = a[r][col] / a[col][col];
        for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    x.resize(n);
    for (int r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
    return true;
  };

  BruteLpResult result;
  std::vector<int> idx(n);
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  std::vector<double> x;
  do {
    int k = 0;
    for (int i = 0; i < m; ++i) {
      if (pick[i]) idx[k++] = i;
    }
    if (!solve_square(idx, x)) continue;
    bool ok = true;
    for (int r = 0; r < m && ok; ++r) {
      double lhs = 0.0;
      for (int c = 0; c < n; ++c) lhs += rows[r][c] * x[c];
      ok = lhs <= rhs[r] + 1e-7;
    }
    if (!ok) continue;
    double value = 0.0;
    for (int c = 0; c < n; ++c) value += lp.objective()[c] * x[c];
    if (!result.feasible || value > result.value) {
      result.feasible = true;
      result.value = value;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return result;
}

// Independent membership oracle for one- and two-state channels: exhaustive
// grid over the per-state weights at `steps` subdivisions. Queries are
// answered from a staircase of the best achievable min-rate pairs; bin
// quantization adds at most 1/4096 of slack, far below the 0.02 margin the
// comparisons use.
class GridOracle {
 public:
  GridOracle(const ErasureProfile& profile, const std::vector<double>& pi,
             bool inner, int steps = 100)
      : bins_(4096), suffix_max_(bins_ + 1, -1.0) {
    const int n = static_cast<int>(profile.per_state.size());
    struct Contribution {
      double a, b, c, d;
    };
    std::vector<std::vector<Contribution>> per_state(n);
    for (int s = 0; s < n; ++s) {
      const StateErasure& p = profile.per_state[s];
      const double w1 = pi[s] * (1.0 - p.e1());
      const double w2 = pi[s] * (1.0 - p.e2());
      const double w12 = pi[s] * (1.0 - p.e11);
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
          if (inner && i + j < steps) continue;
          const double x = static_cast<double>(i) / steps;
          const double y = static_cast<double>(j) / steps;
          per_state[s].push_back(
              {w1 * x, w12 * (1.0 - y), w2 * y, w12 * (1.0 - x)});
        }
      }
    }
    std::vector<double> best(bins_ + 1, -1.0);
    auto record = [&](double m1, double m2) {
      int b = std::min(bins_, static_cast<int>(m1 * bins_));
      if (b >= 0) best[b] = std::max(best[b], m2);
    };
    if (n == 1) {
      for (const Contribution& u : per_state[0]) {
        record(std::min(u.a, u.b), std::min(u.c, u.d));
      }
    } else if (n == 2) {
      for (const Contribution& u : per_state[0]) {
        for (const Contribution& v : per_state[1]) {
          record(std::min(u.a + v.a, u.b + v.b),
                 std::min(u.c + v.c, u.d + v.d));
        }
      }
    } else {
      throw std::runtime_error("grid oracle supports 1 or 2 states");
    }
    suffix_max_ = best;
    for (int b = bins_ - 1; b >= 0; --b) {
      suffix_max_[b] = std::max(suffix_max_[b], suffix_max_[b + 1]);
    }
  }

  bool contains(const RatePair& r) const {
    if (r.r1 < 0.0 || r.r2 < 0.0) return false;
    int b = static_cast<int>(std::ceil(r.r1 * bins_));
    if (b > bins_) return false;
    return suffix_max_[b] >= r.r2;
  }

 private:
  int bins_;
  std::vector<double> suffix_max_;
};

inline ChannelModel one_state_model(double e1, double e2, double e12) {
  StateErasure p;
  p.e11 = e12;
  p.e10 = e1 - e12;
  p.e01 = e2 - e12;
  p.e00 = 1.0 - e1 - e2 + e12;
  return ChannelModel({"s"}, {{1.0}}, {p});
}

inline GilbertElliottParams ge_from_average(double eps1, double g1,
                                            double eps2, double g2) {
  // eps = b / (b + g)  =>  b = g * eps / (1 - eps)
  GilbertElliottParams params;
  params.g1 = g1;
  params.b1 = g1 * eps1 / (1.0 - eps1);
  params.g2 = g2;
  params.b2 = g2 * eps2 / (1.0 - eps2);
  return params;
}

inline ChannelModel random_ge_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  return from_gilbert_elliott({u(rng), u(rng), u(rng), u(rng)});
}

// Random two-state model with entries bounded away from the degenerate
// corners so the rate regions keep a usable size.
inline ChannelModel random_two_state_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  double a = u(rng);
  double b = u(rng);
  Matrix transition = {{1.0 - a, a}, {b, 1.0 - b}};
  std::vector<StateErasure> pmf;
  std::exponential_distribution<double> ex(1.0);
  for (int s = 0; s < 2; ++s) {
    double w[4];
    double sum = 0.0;
    for (double& v : w) {
      v = ex(rng);
      sum += v;
    }
    StateErasure p;
    p.e00 = 0.5 * w[0] / sum + 0.125;
    p.e01 = 0.5 * w[1] / sum + 0.125;
    p.e10 = 0.5 * w[2] / sum + 0.125;
    p.e11 = 0.5 * w[3] / sum + 0.125;
    pmf.push_back(p);
  }
  return ChannelModel({"s0", "s1"}, std::move(transition), std::move(pmf));
}

}  // namespace bpec::testing
