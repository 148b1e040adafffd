#include "bpec/simulator_io.hpp"

#include "bpec/channel_io.hpp"
#include "json.hpp"

namespace bpec {

namespace {

const char* policy_name(const PolicySpec& policy) {
  switch (policy.kind) {
    case PolicySpec::Kind::MaxWeight:
      return "maxweight";
    case PolicySpec::Kind::Probabilistic:
      return "probabilistic";
    case PolicySpec::Kind::UncodedBaseline:
      return "uncoded";
  }
  return "unknown";
}

}  // namespace

std::string stats_to_json(const SimStats& stats, const SimConfig& config) {
  using nlohmann::json;
  json j;
  j["arrivals"] = {{"u1", stats.arrivals_u1}, {"u2", stats.arrivals_u2}};
  j["delivered"] = {{"u1", stats.delivered_u1}, {"u2", stats.delivered_u2}};
  j["actions"] = {{"direct1", stats.action_counts[0]},
                  {"direct2", stats.action_counts[1]},
                  {"coded", stats.action_counts[2]}};
  j["window_avg_queue"] = stats.window_avg_queue;
  j["window_len"] = stats.window_len;
  j["final_queues"] = {{"q1_u1", stats.final_queues.q1_u1},
                       {"q2_u1", stats.final_queues.q2_u1},
                       {"q1_u2", stats.final_queues.q1_u2},
                       {"q2_u2", stats.final_queues.q2_u2}};

  json erasures = json::object();
  const auto& states = config.channel.states();
  for (int s = 0; s < config.channel.num_states(); ++s) {
    const auto& counts = stats.erasure_counts[s];
    const double visits = static_cast<double>(stats.state_visits[s]);
    auto freq = [&](int idx) {
      return visits > 0.0 ? static_cast<double>(counts[idx]) / visits : 0.0;
    };
    erasures[states[s]] = {{"e00", freq(0)}, {"e01", freq(1)},
                           {"e10", freq(2)}, {"e11", freq(3)},
                           {"visits", stats.state_visits[s]}};
  }
  j["empirical_erasures"] = erasures;
  j["seed"] = stats.seed;

  j["config_echo"] = {{"channel", json::parse(channel_to_json(config.channel))},
                      {"policy", policy_name(config.policy)},
                      {"r1", config.arrival_r1},
                      {"r2", config.arrival_r2},
                      {"horizon", config.horizon_n},
                      {"delay", config.delay_d},
                      {"seed", config.seed}};

  if (stats.window_avg_queue.size() >= 10) {
    StabilityVerdict verdict = stability_verdict(stats);
    j["stability"] = {{"slope", verdict.slope}, {"stable", verdict.stable}};
  }
  ThroughputRatio ratio = throughput_check(stats, config);
  j["throughput"] = {{"u1", ratio.u1}, {"u2", ratio.u2}};

  return j.dump(2);
}

}  // namespace bpec
