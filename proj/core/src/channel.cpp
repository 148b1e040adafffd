#include "bpec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bpec/errors.hpp"

namespace bpec {

namespace {

constexpr double kProbTol = 1e-12;

// Validates entries and the sum against kProbTol, then renormalizes so the
// vector sums to 1 exactly in floating point.
void normalize_probability_row(std::vector<double>& row, const char* what) {
  double sum = 0.0;
  for (double& v : row) {
    if (v < -kProbTol || v > 1.0 + kProbTol) {
      throw ConfigError(std::string(what) + ": entry outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    throw ConfigError(std::string(what) + ": probabilities do not sum to 1");
  }
  for (double& v : row) v /= sum;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) {
      throw NumericalError("singular balance equations");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

ChannelModel::ChannelModel(std::vector<std::string> states, Matrix transition,
                           std::vector<StateErasure> erasure_pmf)
    : states_(std::move(states)),
      transition_(std::move(transition)),
      pmf_(std::move(erasure_pmf)) {
  const int n = num_states();
  if (n < 1) throw ConfigError("channel needs at least one state");
  if (std::set<std::string>(states_.begin(), states_.end()).size() !=
      states_.size()) {
    throw ConfigError("state labels must be unique");
  }
  if (static_cast<int>(transition_.size()) != n) {
    throw ConfigError("transition matrix must be square over the states");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(transition_[i].size()) != n) {
      throw ConfigError("transition matrix must be square over the states");
    }
    normalize_probability_row(transition_[i], "transition row");
  }
  if (static_cast<int>(pmf_.size()) != n) {
    throw ConfigError("erasure pmf must cover every state");
  }
  for (StateErasure& p : pmf_) {
    std::vector<double> row = {p.e00, p.e01, p.e10, p.e11};
    normalize_probability_row(row, "erasure pmf");
    p.e00 = row[0];
    p.e01 = row[1];
    p.e10 = row[2];
    p.e11 = row[3];
  }
}

void ChannelModel::check_ergodic() const {
  const int n = num_states();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) adj[i][j] = transition_[i][j] > 0.0;
  }

  auto reaches_all = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        bool edge = forward ? adj[u][v] : adj[v][u];
        if (edge && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
  };
  if (!reaches_all(true) || !reaches_all(false)) {
    throw ConfigError(
        "transition graph is not strongly connected (chain is reducible)");
  }

  // Wielandt: an irreducible chain is aperiodic iff the boolean power
  // B^(n*n) is positive everywhere (n*n exceeds (n-1)^2 + 1).
  std::vector<std::vector<bool>> acc = adj;
  for (int step = 1; step < n * n; ++step) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (!acc[i][k]) continue;
        for (int j = 0; j < n; ++j) {
          if (adj[k][j]) next[i][j] = true;
        }
      }
    }
    acc = std::move(next);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!acc[i][j]) throw ConfigError("chain is periodic");
    }
  }
}

ChannelModel from_gilbert_elliott(const GilbertElliottParams& params) {
  for (double v : {params.b1, params.g1, params.b2, params.g2}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("gilbert_elliott parameters must lie in [0, 1]");
    }
  }
  if (params.b1 + params.g1 <= 0.0 || params.b2 + params.g2 <= 0.0) {
    throw ConfigError("gilbert_elliott user chain is reducible (b + g = 0)");
  }

  // Per-user two-state chains, row order [G, B].
  auto user = [](double b, double g) {
    return Matrix{{1.0 - b, b}, {g, 1.0 - g}};
  };
  Matrix p1 = user(params.b1, params.g1);
  Matrix p2 = user(params.b2, params.g2);

  std::vector<std::string> states = {"GG", "GB", "BG", "BB"};
  Matrix transition(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      transition[i][j] = p1[i >> 1][j >> 1] * p2[i & 1][j & 1];
    }
  }

  // Deterministic erasures: erased exactly when the user's state is bad.
  std::vector<StateErasure> pmf(4);
  pmf[0] = {0.0, 0.0, 0.0, 1.0};  // GG -> (0,0)
  pmf[1] = {0.0, 0.0, 1.0, 0.0};  // GB -> (0,1)
  pmf[2] = {0.0, 1.0, 0.0, 0.0};  // BG -> (1,0)
  pmf[3] = {1.0, 0.0, 0.0, 0.0};  // BB -> (1,1)

  return ChannelModel(std::move(states), std::move(transition),
                      std::move(pmf));
}

std::vector<double> stationary_distribution(const ChannelModel& model) {
  const int n = model.num_states();
  const Matrix& p = model.transition();

  // pi (P - I) = 0 transposed, with the last equation replaced by the
  // normalization sum(pi) = 1. Any single row may be replaced because the
  // rows of (P^T - I) sum to zero.
  Matrix a(n, std::vector<double>(n));
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = p[j][i] - (i == j ? 1.0 : 0.0);
  }
  for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0;
  b[n - 1] = 1.0;

  std::vector<double> pi = solve_linear(std::move(a), std::move(b));

  double sum = 0.0;
  for (double& v : pi) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  for (double& v : pi) v /= sum;

  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    double acc = -pi[j];
    for (int i = 0; i < n; ++i) acc += pi[i] * p[i][j];
    residual = std::max(residual, std::abs(acc));
  }
  if (residual > 1e-10) {
    throw NumericalError("stationary distribution residual too large");
  }
  return pi;
}

ErasureProfile erasure_profile(const ChannelModel& model, int delay) {
  if (delay < 1) throw ConfigError("erasure profile delay must be >= 1");
  const int n = model.num_states();
  const Matrix& p = model.transition();

  // One transition-and-erasure step, then (delay - 1) extra transitions.
  std::vector<StateErasure> prof(n);
  for (int s = 0; s < n; ++s) {
    StateErasure acc{0.0, 0.0, 0.0, 0.0};
    for (int t = 0; t < n; ++t) {
      const StateErasure& pm = model.erasure_pmf(t);
      acc.e11 += p[s][t] * pm.e11;
      acc.e10 += p[s][t] * pm.e10;
      acc.e01 += p[s][t] * pm.e01;
      acc.e00 += p[s][t] * pm.e00;
    }
    prof[s] = acc;
  }
  for (int step = 1; step < delay; ++step) {
    std::vector<StateErasure> next(n);
    for (int s = 0; s < n; ++s) {
      StateErasure acc{0.0, 0.0, 0.0, 0.0};
      for (int t = 0; t < n; ++t) {
        acc.e11 += p[s][t] * prof[t].e11;
        acc.e10 += p[s][t] * prof[t].e10;
        acc.e01 += p[s][t] * prof[t].e01;
        acc.e00 += p[s][t] * prof[t].e00;
      }
      next[s] = acc;
    }
    prof = std::move(next);
  }
  return ErasureProfile{delay, std::move(prof)};
}

LongRunErasure long_run_erasure(const ChannelModel& model) {
  std::vector<double> pi = stationary_distribution(model);
  LongRunErasure out;
  for (int s = 0; s < model.num_states(); ++s) {
    const StateErasure& p = model.erasure_pmf(s);
    out.eps1 += pi[s] * p.e1();
    out.eps2 += pi[s] * p.e2();
    out.eps12 += pi[s] * p.e11;
  }
  return out;
}

StepResult sample_step(const ChannelModel& model, int state, Rng& rng) {
  int next = rng.categorical(model.transition()[state]);
  const StateErasure& p = model.erasure_pmf(next);
  int z = rng.categorical({p.e00, p.e01, p.e10, p.e11});
  return StepResult{next, z >> 1, z & 1};
}

}  // namespace bpec
