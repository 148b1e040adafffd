#pragma once

#include <string>

#include "bpec/simulator.hpp"

namespace bpec {

// JSON export of a run: keys `delivered`, `arrivals`, `actions`,
// `window_avg_queue`, `final_queues`, `empirical_erasures`, `seed`,
// `config_echo`, plus derived `stability` and `throughput` blocks.
std::string stats_to_json(const SimStats& stats, const SimConfig& config);

}  // namespace bpec
