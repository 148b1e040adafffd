#pragma once

#include <string>
#include <vector>

#include "bpec/rng.hpp"

namespace bpec {

using Matrix = std::vector<std::vector<double>>;

// Joint law of the per-user erasure flags (Z1, Z2) seen from some reference
// state. Field "eab" holds P(Z1=a, Z2=b); e10 is "user 1 erased, user 2
// received". The per-user marginals are derived, never stored.
struct StateErasure {
  double e11 = 0.0;
  double e10 = 0.0;
  double e01 = 0.0;
  double e00 = 1.0;

  double e1() const { return e11 + e10; }
  double e2() const { return e11 + e01; }
};

// Erasure law of (Z1, Z2) at feedback delay d, conditioned on the channel
// state d slots earlier; one entry per state. Immutable after construction
// and safe to share across threads.
struct ErasureProfile {
  int delay = 1;
  std::vector<StateErasure> per_state;
};

// Per-user good->bad (b) and bad->good (g) transition probabilities of a
// two-user Gilbert-Elliott channel.
struct GilbertElliottParams {
  double b1 = 0.0;
  double g1 = 0.0;
  double b2 = 0.0;
  double g2 = 0.0;
};

// Finite-state Markov broadcast erasure channel: a state chain plus a joint
// per-state erasure pmf over (Z1, Z2). The constructor validates that rows
// and pmfs are probability vectors within 1e-12 and renormalizes them
// exactly, so file round-trip noise cannot accumulate over long runs.
// Structural chain checks (irreducibility, aperiodicity) are separate; see
// check_ergodic(). Instances are immutable and safe to share across threads.
class ChannelModel {
 public:
  ChannelModel(std::vector<std::string> states, Matrix transition,
               std::vector<StateErasure> erasure_pmf);

  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const Matrix& transition() const { return transition_; }
  const StateErasure& erasure_pmf(int state) const { return pmf_[state]; }
  const std::vector<StateErasure>& erasure_pmfs() const { return pmf_; }

  // Throws ConfigError naming the violated invariant if the positive-
  // transition graph is not strongly connected or the chain is periodic.
  void check_ergodic() const;

 private:
  std::vector<std::string> states_;
  Matrix transition_;
  std::vector<StateErasure> pmf_;
};

// Builds the 4-state model with states ordered [GG, GB, BG, BB], transition
// entries formed as products of the independent per-user transitions, and
// deterministic erasures (erased exactly in the bad state). Throws
// ConfigError if a parameter is outside [0,1] or a user chain has b=g=0.
ChannelModel from_gilbert_elliott(const GilbertElliottParams& params);

// Solves the balance equations directly (normalization replacing one row);
// the returned vector satisfies pi*P = pi with residual <= 1e-10 or a
// NumericalError is thrown.
std::vector<double> stationary_distribution(const ChannelModel& model);

// Law of (Z1, Z2) given the state `delay` slots earlier: a (delay-1)-step
// transition followed by one transition-and-erasure step.
ErasureProfile erasure_profile(const ChannelModel& model, int delay);

struct LongRunErasure {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps12 = 0.0;
};

// Stationary-average erasure probabilities (per user and joint).
LongRunErasure long_run_erasure(const ChannelModel& model);

struct StepResult {
  int next_state = 0;
  int z1 = 0;
  int z2 = 0;
};

// One channel step: draws the next state from the transition row, then the
// erasure pair from the next state's pmf. Identical seeds give identical
// trajectories.
StepResult sample_step(const ChannelModel& model, int state, Rng& rng);

}  // namespace bpec
