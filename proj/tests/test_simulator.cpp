#include <cmath>

#include "bpec/errors.hpp"
#include "bpec/regions.hpp"
#include "bpec/simulator.hpp"
#include "bpec/simulator_io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bpec;

namespace {

SimConfig base_config(ChannelModel channel) {
  SimConfig config{std::move(channel), PolicySpec::max_weight(),
                   0.0, 0.0, 100000, 1, 42};
  return config;
}

}  // namespace

TEST_CASE("all-good channel delivers everything") {
  SimConfig config = base_config(testing::one_state_model(0.0, 0.0, 0.0));
  config.arrival_r1 = 0.4;
  config.arrival_r2 = 0.4;
  SimStats stats = run(config);
  CHECK(static_cast<double>(stats.delivered_u1) / stats.arrivals_u1 >= 0.999);
  CHECK(static_cast<double>(stats.delivered_u2) / stats.arrivals_u2 >= 0.999);
  CHECK(stats.final_queues.total() <= 5);
  CHECK(stability_verdict(stats).stable);
}

TEST_CASE("all-bad channel delivers nothing") {
  SimConfig config = base_config(testing::one_state_model(1.0, 1.0, 1.0));
  config.arrival_r1 = 0.3;
  config.arrival_r2 = 0.2;
  config.horizon_n = 20000;
  SimStats stats = run(config);
  CHECK(stats.delivered_u1 == 0);
  CHECK(stats.delivered_u2 == 0);
  CHECK(stats.final_queues.q1_u1 == stats.arrivals_u1);
  CHECK(stats.final_queues.q1_u2 == stats.arrivals_u2);
  CHECK_FALSE(stability_verdict(stats).stable);
}

TEST_CASE("determinism and conservation") {
  SimConfig config = base_config(from_gilbert_elliott({0.2, 0.2, 0.3, 0.3}));
  config.arrival_r1 = 0.25;
  config.arrival_r2 = 0.2;
  config.horizon_n = 50000;

  SimStats a = run(config);
  SimStats b = run(config);
  CHECK(a.delivered_u1 == b.delivered_u1);
  CHECK(a.delivered_u2 == b.delivered_u2);
  CHECK(a.arrivals_u1 == b.arrivals_u1);
  CHECK(a.window_avg_queue == b.window_avg_queue);
  CHECK(a.action_counts == b.action_counts);
  CHECK(stats_to_json(a, config) == stats_to_json(b, config));

  CHECK(a.arrivals_u1 ==
        a.delivered_u1 + a.final_queues.q1_u1 + a.final_queues.q2_u1);
  CHECK(a.arrivals_u2 ==
        a.delivered_u2 + a.final_queues.q1_u2 + a.final_queues.q2_u2);

  SimConfig other = config;
  other.seed = 43;
  SimStats c = run(other);
  CHECK(a.delivered_u1 != c.delivered_u1);
}

TEST_CASE("policy swap keeps the channel realization") {
  SimConfig mw = base_config(from_gilbert_elliott({0.2, 0.2, 0.3, 0.3}));
  mw.arrival_r1 = 0.2;
  mw.arrival_r2 = 0.2;
  mw.horizon_n = 30000;

  SimConfig prob = mw;
  auto pi = stationary_distribution(mw.channel);
  auto prof = erasure_profile(mw.channel, 1);
  BoundaryPoint bp = boundary_point(prof, pi, 0.785398, true);
  prob.policy = probabilistic_from_region_point(bp.x, bp.y);

  SimStats a = run(mw);
  SimStats b = run(prob);
  CHECK(a.state_visits == b.state_visits);
  CHECK(a.erasure_counts == b.erasure_counts);
}

TEST_CASE("empirical erasure frequencies match the one-step profile") {
  ChannelModel m = from_gilbert_elliott({0.2, 0.2, 0.3, 0.3});
  ErasureProfile prof = erasure_profile(m, 1);
  SimConfig config = base_config(m);
  config.arrival_r1 = 0.1;
  config.arrival_r2 = 0.1;
  config.horizon_n = 200000;
  SimStats stats = run(config);
  for (int s = 0; s < m.num_states(); ++s) {
    const double visits = static_cast<double>(stats.state_visits[s]);
    REQUIRE(visits > 10000);
    const double freq[4] = {
        stats.erasure_counts[s][0] / visits, stats.erasure_counts[s][1] / visits,
        stats.erasure_counts[s][2] / visits, stats.erasure_counts[s][3] / visits};
    const StateErasure& p = prof.per_state[s];
    const double expect[4] = {p.e00, p.e01, p.e10, p.e11};
    for (int k = 0; k < 4; ++k) {
      double se = std::sqrt(std::max(expect[k] * (1.0 - expect[k]), 1e-6) /
                            visits);
      CHECK(std::abs(freq[k] - expect[k]) < 3.0 * se + 1e-3);
    }
  }
}

TEST_CASE("delayed information still conserves and runs deterministically") {
  SimConfig config = base_config(from_gilbert_elliott({0.15, 0.1, 0.1, 0.1}));
  config.arrival_r1 = 0.15;
  config.arrival_r2 = 0.15;
  config.delay_d = 4;
  config.horizon_n = 40000;
  SimStats a = run(config);
  SimStats b = run(config);
  CHECK(a.delivered_u1 == b.delivered_u1);
  CHECK(a.window_avg_queue == b.window_avg_queue);
  CHECK(a.arrivals_u1 ==
        a.delivered_u1 + a.final_queues.q1_u1 + a.final_queues.q2_u1);
  CHECK(a.arrivals_u2 ==
        a.delivered_u2 + a.final_queues.q1_u2 + a.final_queues.q2_u2);
}

TEST_CASE("stability verdict") {
  SimStats stats;
  stats.window_len = 100;
  SUBCASE("constant series is stable") {
    stats.window_avg_queue.assign(20, 7.5);
    StabilityVerdict v = stability_verdict(stats);
    CHECK(v.slope == doctest::Approx(0.0));
    CHECK(v.stable);
  }
  SUBCASE("unit growth per slot") {
    for (int k = 0; k < 20; ++k) {
      stats.window_avg_queue.push_back(100.0 * k);
    }
    StabilityVerdict v = stability_verdict(stats);
    CHECK(v.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(v.stable);
  }
  SUBCASE("too few windows") {
    stats.window_avg_queue.assign(9, 1.0);
    CHECK_THROWS_AS(stability_verdict(stats), ConfigError);
  }
}

TEST_CASE("throughput conventions") {
  SimConfig config = base_config(testing::one_state_model(0.0, 0.0, 0.0));
  config.horizon_n = 1000;
  SimStats stats = run(config);  // zero arrival rates
  ThroughputRatio ratio = throughput_check(stats, config);
  CHECK(ratio.u1 == 1.0);
  CHECK(ratio.u2 == 1.0);
  CHECK(stats.delivered_u1 == 0);
}

TEST_CASE("config validation") {
  SimConfig config = base_config(testing::one_state_model(0.1, 0.1, 0.05));
  config.horizon_n = 0;
  CHECK_THROWS_AS(run(config), ConfigError);
  config.horizon_n = 10;
  config.delay_d = 0;
  CHECK_THROWS_AS(run(config), ConfigError);
  config.delay_d = 1;
  config.arrival_r1 = 1.5;
  CHECK_THROWS_AS(run(config), ConfigError);
  config.arrival_r1 = 0.1;
  config.policy = PolicySpec::probabilistic({{1.0, 0.0, 0.0}});
  config.channel = from_gilbert_elliott({0.2, 0.2, 0.3, 0.3});
  CHECK_THROWS_AS(run(config), ConfigError);  // pmf does not cover 4 states
}

TEST_CASE("max-weight tracks the probabilistic policy from the same point") {
  // At a clearly stable operating point both policies are stable, and the
  // queue-aware rule keeps shorter queues on average across seeds.
  ChannelModel m = from_gilbert_elliott({0.2, 0.2, 0.3, 0.3});
  auto pi = stationary_distribution(m);
  auto prof = erasure_profile(m, 1);
  BoundaryPoint bp = boundary_point(prof, pi, 0.785398, true, true);
  const double f = 0.85;

  double mw_avg = 0.0;
  double prob_avg = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SimConfig config = base_config(m);
    config.arrival_r1 = f * bp.rate.r1;
    config.arrival_r2 = f * bp.rate.r2;
    config.horizon_n = 200000;
    config.seed = seed;

    config.policy = PolicySpec::max_weight();
    SimStats mw = run(config);
    CHECK(stability_verdict(mw).stable);
    config.policy = probabilistic_from_region_point(bp.x, bp.y);
    SimStats prob = run(config);
    CHECK(stability_verdict(prob).stable);

    for (double w : mw.window_avg_queue) mw_avg += w;
    for (double w : prob.window_avg_queue) prob_avg += w;
  }
  CHECK(mw_avg < prob_avg);
}
