// Command-line front end: compute rate-region boundaries, run simulations
// and rate sweeps, and validate channel configs. All outputs are
// deterministic functions of the input bytes, flags and seeds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpec/channel_io.hpp"
#include "bpec/errors.hpp"
#include "bpec/regions.hpp"
#include "bpec/simulator.hpp"
#include "bpec/simulator_io.hpp"

namespace {

using namespace bpec;

constexpr double kSymmetricRay = std::numbers::pi / 4.0;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + ": \"" + text + "\"");
  }
}

struct FracToken {
  double fraction = 1.0;
  bool of_outer = false;
};

FracToken parse_frac_token(const std::string& token) {
  FracToken out;
  std::string value = token;
  const std::string sep = "-of-";
  auto pos = token.find(sep);
  if (pos != std::string::npos) {
    value = token.substr(0, pos);
    std::string region = token.substr(pos + sep.size());
    if (region == "outer") {
      out.of_outer = true;
    } else if (region != "inner") {
      throw ConfigError("rate fraction must end in -of-inner or -of-outer: " +
                        token);
    }
  }
  out.fraction = parse_double(value, "rate fraction");
  if (out.fraction < 0.0) throw ConfigError("rate fraction must be >= 0");
  return out;
}

RatePair rates_from_frac(const FracToken& token, const ChannelModel& model,
                         int delay) {
  ErasureProfile profile = erasure_profile(model, delay);
  std::vector<double> pi = stationary_distribution(model);
  BoundaryPoint bp =
      boundary_point(profile, pi, kSymmetricRay, !token.of_outer);
  return {token.fraction * bp.rate.r1, token.fraction * bp.rate.r2};
}

PolicySpec make_policy(const std::string& name, const ChannelModel& model,
                       int delay, const RatePair& rates) {
  if (name == "maxweight") return PolicySpec::max_weight();
  if (name == "uncoded") return PolicySpec::uncoded_baseline();
  if (name == "prob" || name == "probabilistic") {
    // Pick the per-state weights that support the requested rates with the
    // most slack, keeping coded capacity ahead of the diversion rate so the
    // overheard queues stay served.
    ErasureProfile profile = erasure_profile(model, delay);
    std::vector<double> pi = stationary_distribution(model);
    RegionWitness w = witness_for_rates(profile, pi, rates, true, true);
    return probabilistic_from_region_point(w.x, w.y);
  }
  throw ConfigError("unknown policy: " + name +
                    " (expected maxweight, prob or uncoded)");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + path);
  return out;
}

// --- region ---------------------------------------------------------------

struct RegionArgs {
  std::string channel_path;
  std::string out_path;
  std::string kinds = "inner,outer";
  std::string delays = "1";
  int directions = 181;
};

int cmd_region(const RegionArgs& args) {
  ChannelModel model = load_channel_json(args.channel_path);
  std::vector<int> delays;
  for (const std::string& d : split(args.delays, ',')) {
    int delay = static_cast<int>(parse_double(d, "delay"));
    if (delay < 1) throw ConfigError("delays must be >= 1");
    delays.push_back(delay);
  }
  if (delays.empty()) throw ConfigError("delay list must not be empty");

  std::vector<std::pair<std::string, Polygon>> out;
  for (const std::string& kind : split(args.kinds, ',')) {
    if (kind == "inner" || kind == "outer") {
      RegionForm form = kind == "inner" ? RegionForm::Inner : RegionForm::Outer;
      for (int d : delays) {
        std::string label = kind + (d == 1 ? "" : "_d" + std::to_string(d));
        out.emplace_back(label, boundary({form, d}, model, args.directions));
      }
    } else if (kind == "memoryless_fb") {
      out.emplace_back(kind, boundary({RegionForm::MemorylessFb, 1}, model));
    } else if (kind == "memoryless_nofb") {
      out.emplace_back(kind, boundary({RegionForm::MemorylessNoFb, 1}, model));
    } else if (kind == "minkowski") {
      out.emplace_back(kind, boundary({RegionForm::Minkowski, 1}, model));
    } else {
      throw ConfigError("unknown region kind: " + kind);
    }
  }

  std::ofstream os = open_output(args.out_path);
  write_boundary_csv(os, out, args.directions);
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string channel_path;
  std::string out_path;
  std::string policy = "maxweight";
  std::string rate_frac;
  double r1 = -1.0;
  double r2 = -1.0;
  std::int64_t horizon = 1000000;
  int delay = 1;
  std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateArgs& args) {
  ChannelModel model = load_channel_json(args.channel_path);

  RatePair rates;
  if (!args.rate_frac.empty()) {
    if (args.r1 >= 0.0 || args.r2 >= 0.0) {
      throw ConfigError("give either --rate-frac or --r1/--r2, not both");
    }
    rates = rates_from_frac(parse_frac_token(args.rate_frac), model,
                            args.delay);
  } else {
    if (args.r1 < 0.0 || args.r2 < 0.0) {
      throw ConfigError("either --rate-frac or both --r1 and --r2 required");
    }
    rates = {args.r1, args.r2};
  }

  SimConfig config{model, make_policy(args.policy, model, args.delay, rates),
                   rates.r1, rates.r2, args.horizon, args.delay, args.seed};
  SimStats stats = run(config);

  std::ofstream os = open_output(args.out_path);
  os << stats_to_json(stats, config) << "\n";
  return 0;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string channel_path;
  std::string out_path;
  std::string policy = "maxweight";
  std::string fracs;
  std::string rates;
  std::string seeds;
  std::int64_t horizon = 1000000;
  int delay = 1;
};

int cmd_sweep(const SweepArgs& args) {
  ChannelModel model = load_channel_json(args.channel_path);

  std::vector<RatePair> points;
  if (!args.fracs.empty()) {
    if (!args.rates.empty()) {
      throw ConfigError("give either --fracs or --rates, not both");
    }
    for (const std::string& token : split(args.fracs, ',')) {
      points.push_back(rates_from_frac(parse_frac_token(token), model,
                                       args.delay));
    }
  } else {
    for (const std::string& pair : split(args.rates, ',')) {
      auto parts = split(pair, ':');
      if (parts.size() != 2) {
        throw ConfigError("rate points must look like R1:R2, got " + pair);
      }
      points.push_back({parse_double(parts[0], "R1"),
                        parse_double(parts[1], "R2")});
    }
  }
  if (points.empty()) throw ConfigError("rate point list must not be empty");

  std::vector<std::uint64_t> seeds;
  for (const std::string& s : split(args.seeds, ',')) {
    seeds.push_back(static_cast<std::uint64_t>(std::stoull(s)));
  }
  if (seeds.empty()) throw ConfigError("seed list must not be empty");

  std::ofstream os = open_output(args.out_path);
  os << "R1,R2,seed,policy,slope,stable,thpt1,thpt2\n";
  char buf[256];
  for (const RatePair& rates : points) {
    PolicySpec policy = make_policy(args.policy, model, args.delay, rates);
    for (std::uint64_t seed : seeds) {
      SimConfig config{model, policy,      rates.r1, rates.r2,
                       args.horizon, args.delay, seed};
      SimStats stats = run(config);
      StabilityVerdict verdict = stability_verdict(stats);
      ThroughputRatio thpt = throughput_check(stats, config);
      std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%llu,%s,%.15g,%d,%.15g,%.15g\n",
                    rates.r1, rates.r2,
                    static_cast<unsigned long long>(seed),
                    args.policy.c_str(), verdict.slope, verdict.stable ? 1 : 0,
                    thpt.u1, thpt.u2);
      os << buf;
    }
  }
  return 0;
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const std::string& channel_path) {
  ChannelModel model = load_channel_json(channel_path);
  std::cout << "ok: " << model.num_states() << " states, all invariants hold\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions and queue-based coding policies for two-receiver "
               "broadcast erasure channels with Markov memory"};
  app.require_subcommand(1);

  RegionArgs region_args;
  CLI::App* region = app.add_subcommand(
      "region", "Export region boundaries as CSV");
  region->add_option("--channel", region_args.channel_path, "channel JSON")
      ->required();
  region->add_option("--out", region_args.out_path, "output CSV path")
      ->required();
  region->add_option("--kinds", region_args.kinds,
                     "comma list: inner,outer,memoryless_fb,memoryless_nofb,"
                     "minkowski");
  region->add_option("--delays", region_args.delays,
                     "comma list of feedback delays for inner/outer");
  region->add_option("--directions", region_args.directions,
                     "sweep directions (>= 8)");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run one simulation and write stats JSON");
  simulate->add_option("--channel", sim_args.channel_path, "channel JSON")
      ->required();
  simulate->add_option("--out", sim_args.out_path, "output JSON path")
      ->required();
  simulate->add_option("--policy", sim_args.policy,
                       "maxweight | prob | uncoded");
  simulate->add_option("--rate-frac", sim_args.rate_frac,
                       "fraction of the symmetric boundary point, e.g. 0.95 "
                       "or 1.05-of-outer");
  simulate->add_option("--r1", sim_args.r1, "arrival rate, user 1");
  simulate->add_option("--r2", sim_args.r2, "arrival rate, user 2");
  simulate->add_option("--horizon", sim_args.horizon, "slots");
  simulate->add_option("--delay", sim_args.delay, "feedback delay");
  simulate->add_option("--seed", sim_args.seed, "master seed");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a rate x seed grid and write one CSV row per run");
  sweep->add_option("--channel", sweep_args.channel_path, "channel JSON")
      ->required();
  sweep->add_option("--out", sweep_args.out_path, "output CSV path")
      ->required();
  sweep->add_option("--policy", sweep_args.policy,
                    "maxweight | prob | uncoded");
  sweep->add_option("--fracs", sweep_args.fracs,
                    "comma list of boundary fractions");
  sweep->add_option("--rates", sweep_args.rates,
                    "comma list of R1:R2 rate points");
  sweep->add_option("--seeds", sweep_args.seeds, "comma list of seeds");
  sweep->add_option("--horizon", sweep_args.horizon, "slots");
  sweep->add_option("--delay", sweep_args.delay, "feedback delay");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check a channel config against the model invariants");
  validate->add_option("--channel", validate_path, "channel JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (region->parsed()) return cmd_region(region_args);
    if (simulate->parsed()) return cmd_simulate(sim_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
