#include "bpec/channel_io.hpp"

#include <fstream>
#include <sstream>

#include "bpec/errors.hpp"
#include "json.hpp"

namespace bpec {

namespace {

using nlohmann::json;

double get_prob(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(ctx + ": missing numeric field \"" + key + "\"");
  }
  return j[key].get<double>();
}

}  // namespace

ChannelModel parse_channel_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("channel config is not valid JSON: ") +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("channel config must be an object");

  bool has_explicit =
      j.contains("states") || j.contains("transition") || j.contains("erasure");
  bool has_ge = j.contains("gilbert_elliott");
  if (has_ge && has_explicit) {
    throw ConfigError(
        "exactly one of transition/erasure or gilbert_elliott may be given");
  }

  if (has_ge) {
    const json& ge = j["gilbert_elliott"];
    GilbertElliottParams params;
    params.b1 = get_prob(ge, "b1", "gilbert_elliott");
    params.g1 = get_prob(ge, "g1", "gilbert_elliott");
    params.b2 = get_prob(ge, "b2", "gilbert_elliott");
    params.g2 = get_prob(ge, "g2", "gilbert_elliott");
    ChannelModel model = from_gilbert_elliott(params);
    model.check_ergodic();
    return model;
  }

  if (!j.contains("states") || !j.contains("transition") ||
      !j.contains("erasure")) {
    throw ConfigError(
        "channel config needs states, transition and erasure (or a "
        "gilbert_elliott block)");
  }

  std::vector<std::string> states;
  for (const json& s : j["states"]) {
    if (!s.is_string()) throw ConfigError("states must be strings");
    states.push_back(s.get<std::string>());
  }

  Matrix transition;
  for (const json& row : j["transition"]) {
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) throw ConfigError("transition entries must be numbers");
      r.push_back(v.get<double>());
    }
    transition.push_back(std::move(r));
  }

  const json& erasure = j["erasure"];
  std::vector<StateErasure> pmf;
  for (const std::string& s : states) {
    if (!erasure.contains(s)) {
      throw ConfigError("erasure pmf missing for state \"" + s + "\"");
    }
    const json& e = erasure[s];
    StateErasure p;
    p.e00 = get_prob(e, "e00", "erasure[" + s + "]");
    p.e01 = get_prob(e, "e01", "erasure[" + s + "]");
    p.e10 = get_prob(e, "e10", "erasure[" + s + "]");
    p.e11 = get_prob(e, "e11", "erasure[" + s + "]");
    pmf.push_back(p);
  }

  ChannelModel model(std::move(states), std::move(transition), std::move(pmf));
  model.check_ergodic();
  return model;
}

ChannelModel load_channel_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open channel config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_json(buf.str());
}

std::string channel_to_json(const ChannelModel& model) {
  json j;
  j["states"] = model.states();
  j["transition"] = model.transition();
  json erasure = json::object();
  for (int s = 0; s < model.num_states(); ++s) {
    const StateErasure& p = model.erasure_pmf(s);
    erasure[model.states()[s]] = {
        {"e00", p.e00}, {"e01", p.e01}, {"e10", p.e10}, {"e11", p.e11}};
  }
  j["erasure"] = erasure;
  return j.dump();
}

}  // namespace bpec
