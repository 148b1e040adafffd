#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bpec/channel.hpp"
#include "bpec/scheduler.hpp"

namespace bpec {

struct SimConfig {
  ChannelModel channel;
  PolicySpec policy;
  double arrival_r1 = 0.0;  // Bernoulli packet arrival rates, packets/slot
  double arrival_r2 = 0.0;
  std::int64_t horizon_n = 1;
  int delay_d = 1;  // feedback/state information delay, slots
  std::uint64_t seed = 0;
};

// Per-run counters and windowed queue averages. Runs are deterministic:
// identical (config, seed) produce bit-identical stats.
struct SimStats {
  std::int64_t arrivals_u1 = 0, arrivals_u2 = 0;
  std::int64_t delivered_u1 = 0, delivered_u2 = 0;
  std::array<std::int64_t, 3> action_counts{0, 0, 0};

  // Time-averaged total queue length per window (horizon split into ~20).
  std::vector<double> window_avg_queue;
  std::int64_t window_len = 0;

  QueueState final_queues;

  // Per previous state: counts of (z1,z2) outcomes [n00, n01, n10, n11]
  // and the number of visits.
  std::vector<std::array<std::int64_t, 4>> erasure_counts;
  std::vector<std::int64_t> state_visits;

  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
};

// Runs one slot-by-slot simulation: Bernoulli arrivals, true channel
// evolution, policy decisions from the information-lagged view (channel
// state from delay_d slots ago; queue state as reconciled by feedback, which
// for slot t arrives at t + delay_d), execution against the true erasure
// draw, immediate true-queue update. For delay_d = 1 the lagged view
// coincides with the true queues at decision time. Substreams for the two
// arrival processes, channel transitions, erasures and policy draws are
// seeded independently from the master seed.
SimStats run(const SimConfig& config);

struct StabilityVerdict {
  double slope = 0.0;  // packets per slot
  bool stable = false;
};

// Least-squares slope of the windowed average total queue versus window
// index, normalized to packets/slot; stable iff slope <= threshold.
// Throws ConfigError when fewer than 10 windows are available.
StabilityVerdict stability_verdict(const SimStats& stats,
                                   double slope_threshold = 0.005);

struct ThroughputRatio {
  double u1 = 1.0;
  double u2 = 1.0;
};

// delivered / (arrival rate * horizon) per user; 1 by convention for a zero
// arrival rate.
ThroughputRatio throughput_check(const SimStats& stats,
                                 const SimConfig& config);

}  // namespace bpec
