#include "bpec/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bpec/errors.hpp"

namespace bpec {

ApplyResult apply_action(QueueState q, Action a, int z1, int z2) {
  ApplyResult res;
  switch (a) {
    case Action::Direct1:
      if (q.q1_u1 > 0) {
        if (z1 == 0) {
          --q.q1_u1;
          res.flows.f13_u1 = 1;
          res.delivered_u1 = 1;
        } else if (z2 == 0) {
          --q.q1_u1;
          ++q.q2_u1;
          res.flows.f12_u1 = 1;
        }
      }
      break;
    case Action::Direct2:
      if (q.q1_u2 > 0) {
        if (z2 == 0) {
          --q.q1_u2;
          res.flows.f13_u2 = 1;
          res.delivered_u2 = 1;
        } else if (z1 == 0) {
          --q.q1_u2;
          ++q.q2_u2;
          res.flows.f12_u2 = 1;
        }
      }
      break;
    case Action::Coded:
      if (q.q2_u1 > 0 && z1 == 0) {
        --q.q2_u1;
        res.flows.f23_u1 = 1;
        res.delivered_u1 = 1;
      }
      if (q.q2_u2 > 0 && z2 == 0) {
        --q.q2_u2;
        res.flows.f23_u2 = 1;
        res.delivered_u2 = 1;
      }
      break;
  }
  res.queues = q;
  return res;
}

Action max_weight_decide(const QueueState& q, const StateErasure& prof) {
  const double w1 = (1.0 - prof.e1()) * static_cast<double>(q.q1_u1) +
                    prof.e10 * static_cast<double>(q.q1_u1 - q.q2_u1);
  const double w2 = (1.0 - prof.e2()) * static_cast<double>(q.q1_u2) +
                    prof.e01 * static_cast<double>(q.q1_u2 - q.q2_u2);
  const double w3 = (1.0 - prof.e1()) * static_cast<double>(q.q2_u1) +
                    (1.0 - prof.e2()) * static_cast<double>(q.q2_u2);
  Action best = Action::Direct1;
  double best_w = w1;
  if (w2 > best_w) {
    best = Action::Direct2;
    best_w = w2;
  }
  if (w3 > best_w) best = Action::Coded;
  return best;
}

PolicySpec PolicySpec::probabilistic(std::vector<std::array<double, 3>> pmf) {
  for (const auto& row : pmf) {
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0) throw ConfigError("action probabilities must be >= 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ConfigError("action probabilities must sum to 1");
    }
  }
  return {Kind::Probabilistic, std::move(pmf)};
}

PolicySpec probabilistic_from_region_point(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw ConfigError("region point needs matching x and y vectors");
  }
  const double tol = 1e-9;
  std::vector<std::array<double, 3>> pmf(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    double xs = x[s];
    double ys = y[s];
    if (xs < -tol || xs > 1.0 + tol || ys < -tol || ys > 1.0 + tol) {
      throw ConfigError("region point coordinates must lie in [0, 1]");
    }
    double coded = xs + ys - 1.0;
    if (coded < -tol) {
      throw ConfigError("region point has x_s + y_s < 1 at state " +
                        std::to_string(s) +
                        "; no action distribution realizes it");
    }
    std::array<double, 3> row = {std::clamp(1.0 - ys, 0.0, 1.0),
                                 std::clamp(1.0 - xs, 0.0, 1.0),
                                 std::clamp(coded, 0.0, 1.0)};
    double sum = row[0] + row[1] + row[2];
    for (double& p : row) p /= sum;
    pmf[s] = row;
  }
  return PolicySpec::probabilistic(std::move(pmf));
}

Action uncoded_decide(const QueueState& q, const StateErasure& prof) {
  const double w1 = (1.0 - prof.e1()) * static_cast<double>(q.q1_u1);
  const double w2 = (1.0 - prof.e2()) * static_cast<double>(q.q1_u2);
  return w2 > w1 ? Action::Direct2 : Action::Direct1;
}

ApplyResult apply_uncoded(QueueState q, Action a, int z1, int z2) {
  ApplyResult res;
  if (a == Action::Direct1 && q.q1_u1 > 0 && z1 == 0) {
    --q.q1_u1;
    res.flows.f13_u1 = 1;
    res.delivered_u1 = 1;
  } else if (a == Action::Direct2 && q.q1_u2 > 0 && z2 == 0) {
    --q.q1_u2;
    res.flows.f13_u2 = 1;
    res.delivered_u2 = 1;
  }
  res.queues = q;
  return res;
}

}  // namespace bpec
