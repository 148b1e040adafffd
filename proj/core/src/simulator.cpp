#include "bpec/simulator.hpp"

#include <cassert>
#include <deque>

#include "bpec/errors.hpp"

namespace bpec {

namespace {

constexpr std::uint64_t kLabelArrivalsU1 = 0x61727231;
constexpr std::uint64_t kLabelArrivalsU2 = 0x61727232;
constexpr std::uint64_t kLabelChannel = 0x6368616e;
constexpr std::uint64_t kLabelErasure = 0x65726173;
constexpr std::uint64_t kLabelPolicy = 0x706f6c69;

struct QueueDelta {
  std::int64_t slot = 0;
  std::int64_t q1_u1 = 0, q2_u1 = 0, q1_u2 = 0, q2_u2 = 0;
};

void validate(const SimConfig& config) {
  if (config.horizon_n < 1) throw ConfigError("horizon must be >= 1");
  if (config.delay_d < 1) throw ConfigError("feedback delay must be >= 1");
  for (double r : {config.arrival_r1, config.arrival_r2}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw ConfigError("arrival rates must lie in [0, 1]");
    }
  }
  if (config.policy.kind == PolicySpec::Kind::Probabilistic &&
      static_cast<int>(config.policy.action_pmf.size()) !=
          config.channel.num_states()) {
    throw ConfigError("probabilistic policy must cover every channel state");
  }
}

}  // namespace

SimStats run(const SimConfig& config) {
  validate(config);
  const ChannelModel& ch = config.channel;
  const int num_states = ch.num_states();
  const std::int64_t horizon = config.horizon_n;
  const int delay = config.delay_d;

  const std::vector<double> pi = stationary_distribution(ch);
  const ErasureProfile profile = erasure_profile(ch, delay);

  Rng rng_arr1 = Rng::substream(config.seed, kLabelArrivalsU1);
  Rng rng_arr2 = Rng::substream(config.seed, kLabelArrivalsU2);
  Rng rng_chan = Rng::substream(config.seed, kLabelChannel);
  Rng rng_eras = Rng::substream(config.seed, kLabelErasure);
  Rng rng_policy = Rng::substream(config.seed, kLabelPolicy);

  SimStats stats;
  stats.seed = config.seed;
  stats.horizon = horizon;
  stats.window_len = std::max<std::int64_t>(1, horizon / 20);
  stats.erasure_counts.assign(num_states, {0, 0, 0, 0});
  stats.state_visits.assign(num_states, 0);

  int state = rng_chan.categorical(pi);  // initial state, stationary start
  // Known states at the transmitter, oldest first: [S_{t-d} .. S_{t-1}].
  std::deque<int> known_states(delay, state);

  QueueState truth;
  QueueState view;  // transmitter's feedback-lagged queue estimate
  std::deque<QueueDelta> pending;

  double window_acc = 0.0;
  std::int64_t window_slots = 0;

  for (std::int64_t t = 1; t <= horizon; ++t) {
    // Arrivals are local knowledge: both views take them immediately.
    if (rng_arr1.bernoulli(config.arrival_r1)) {
      ++truth.q1_u1;
      ++view.q1_u1;
      ++stats.arrivals_u1;
    }
    if (rng_arr2.bernoulli(config.arrival_r2)) {
      ++truth.q1_u2;
      ++view.q1_u2;
      ++stats.arrivals_u2;
    }

    // Feedback for slot tau arrives at tau + delay.
    while (!pending.empty() && pending.front().slot + delay <= t) {
      const QueueDelta& d = pending.front();
      view.q1_u1 += d.q1_u1;
      view.q2_u1 += d.q2_u1;
      view.q1_u2 += d.q1_u2;
      view.q2_u2 += d.q2_u2;
      pending.pop_front();
    }

    const int known_state = known_states.front();
    Action action = Action::Direct1;
    switch (config.policy.kind) {
      case PolicySpec::Kind::MaxWeight:
        action = max_weight_decide(view, profile.per_state[known_state]);
        break;
      case PolicySpec::Kind::Probabilistic: {
        const auto& row = config.policy.action_pmf[known_state];
        action = static_cast<Action>(
            rng_policy.categorical({row[0], row[1], row[2]}));
        break;
      }
      case PolicySpec::Kind::UncodedBaseline:
        action = uncoded_decide(view, profile.per_state[known_state]);
        break;
    }

    const int next_state = rng_chan.categorical(ch.transition()[state]);
    const StateErasure& pmf = ch.erasure_pmf(next_state);
    const int z = rng_eras.categorical({pmf.e00, pmf.e01, pmf.e10, pmf.e11});
    const int z1 = z >> 1;
    const int z2 = z & 1;

    stats.erasure_counts[state][z] += 1;
    stats.state_visits[state] += 1;

    const QueueState before = truth;
    ApplyResult res =
        config.policy.kind == PolicySpec::Kind::UncodedBaseline
            ? apply_uncoded(truth, action, z1, z2)
            : apply_action(truth, action, z1, z2);
    truth = res.queues;
    stats.delivered_u1 += res.delivered_u1;
    stats.delivered_u2 += res.delivered_u2;
    stats.action_counts[static_cast<int>(action)] += 1;

    pending.push_back(QueueDelta{t, truth.q1_u1 - before.q1_u1,
                                 truth.q2_u1 - before.q2_u1,
                                 truth.q1_u2 - before.q1_u2,
                                 truth.q2_u2 - before.q2_u2});

    known_states.push_back(next_state);
    known_states.pop_front();
    state = next_state;

    assert(stats.arrivals_u1 ==
           stats.delivered_u1 + truth.q1_u1 + truth.q2_u1);
    assert(stats.arrivals_u2 ==
           stats.delivered_u2 + truth.q1_u2 + truth.q2_u2);

    window_acc += static_cast<double>(truth.total());
    ++window_slots;
    if (window_slots == stats.window_len || t == horizon) {
      stats.window_avg_queue.push_back(window_acc /
                                       static_cast<double>(window_slots));
      window_acc = 0.0;
      window_slots = 0;
    }
  }

  stats.final_queues = truth;
  return stats;
}

StabilityVerdict stability_verdict(const SimStats& stats,
                                   double slope_threshold) {
  const int w = static_cast<int>(stats.window_avg_queue.size());
  if (w < 10) {
    throw ConfigError("stability verdict needs at least 10 windows");
  }
  double mean_x = (w - 1) / 2.0;
  double mean_y = 0.0;
  for (double v : stats.window_avg_queue) mean_y += v;
  mean_y /= w;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < w; ++k) {
    num += (k - mean_x) * (stats.window_avg_queue[k] - mean_y);
    den += (k - mean_x) * (k - mean_x);
  }
  double slope_per_window = num / den;
  StabilityVerdict verdict;
  verdict.slope = slope_per_window / static_cast<double>(stats.window_len);
  verdict.stable = verdict.slope <= slope_threshold;
  return verdict;
}

ThroughputRatio throughput_check(const SimStats& stats,
                                 const SimConfig& config) {
  ThroughputRatio ratio;
  const double slots = static_cast<double>(stats.horizon);
  if (config.arrival_r1 > 0.0) {
    ratio.u1 = static_cast<double>(stats.delivered_u1) /
               (config.arrival_r1 * slots);
  }
  if (config.arrival_r2 > 0.0) {
    ratio.u2 = static_cast<double>(stats.delivered_u2) /
               (config.arrival_r2 * slots);
  }
  return ratio;
}

}  // namespace bpec
