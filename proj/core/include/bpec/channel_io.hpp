#pragma once

#include <string>

#include "bpec/channel.hpp"

namespace bpec {

// Channel config JSON. Two mutually exclusive forms:
//   {"states": [...], "transition": [[...],...],
//    "erasure": {"<state>": {"e00":..,"e01":..,"e10":..,"e11":..}, ...}}
// or
//   {"gilbert_elliott": {"b1":.., "g1":.., "b2":.., "g2":..}}
// Key "eab" means P(Z1=a, Z2=b). Loading enforces the full set of model
// invariants (probability rows, strong connectivity, aperiodicity) and
// throws ConfigError naming the violated one.
ChannelModel parse_channel_json(const std::string& text);
ChannelModel load_channel_json(const std::string& path);

// Canonical explicit form (states/transition/erasure), used for config echo.
std::string channel_to_json(const ChannelModel& model);

}  // namespace bpec
