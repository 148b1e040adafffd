#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bpec/channel.hpp"

namespace bpec {

// Transmitter-side buffer occupancies, in packets. q1_uj holds fresh packets
// for user j; q2_uj holds packets for user j already overheard by the other
// user (so a coded packet serves both sides at once). The exit buffers are
// identically empty and not stored.
struct QueueState {
  std::int64_t q1_u1 = 0;
  std::int64_t q2_u1 = 0;
  std::int64_t q1_u2 = 0;
  std::int64_t q2_u2 = 0;

  std::int64_t total() const { return q1_u1 + q2_u1 + q1_u2 + q2_u2; }
};

enum class Action { Direct1 = 0, Direct2 = 1, Coded = 2 };

// Per-slot unit flows between buffers, already gated by source occupancy:
// f12 = fresh packet diverted to the overheard buffer, f13 = fresh packet
// delivered, f23 = overheard packet delivered via a coded send.
struct FlowOutcome {
  int f12_u1 = 0, f13_u1 = 0, f23_u1 = 0;
  int f12_u2 = 0, f13_u2 = 0, f23_u2 = 0;
};

struct ApplyResult {
  QueueState queues;
  FlowOutcome flows;
  int delivered_u1 = 0;
  int delivered_u2 = 0;
};

// Executes one slot against the realized erasure pair (z = 1 means erased).
// Direct j: delivered on z_j = 0; diverted to q2_uj when erased at j but
// received at the other user; unchanged when erased at both. Coded: each
// user's q2 head is delivered independently on z_j = 0; with only one q2
// occupied this degenerates to an uncoded retransmission of that packet.
// Empty-source actions are legal no-ops with zero flows.
ApplyResult apply_action(QueueState q, Action a, int z1, int z2);

// Max-weight rule: picks the action with the largest queue-weighted expected
// service given the erasure law `prof` of the decision's reference state.
//   w1 = (1-e1)*q1_u1 + e10*(q1_u1 - q2_u1)
//   w2 = (1-e2)*q1_u2 + e01*(q1_u2 - q2_u2)
//   w3 = (1-e1)*q2_u1 + (1-e2)*q2_u2
// Ties break toward the lowest action index for determinism.
Action max_weight_decide(const QueueState& q, const StateErasure& prof);

// State-only transmission policy descriptions.
struct PolicySpec {
  enum class Kind { MaxWeight, Probabilistic, UncodedBaseline };

  Kind kind = Kind::MaxWeight;
  // Probabilistic only: per-state pmf over (Direct1, Direct2, Coded).
  std::vector<std::array<double, 3>> action_pmf;

  static PolicySpec max_weight() { return {Kind::MaxWeight, {}}; }
  static PolicySpec uncoded_baseline() { return {Kind::UncodedBaseline, {}}; }
  static PolicySpec probabilistic(std::vector<std::array<double, 3>> pmf);
};

// State-only policy realizing a region point: per state the action pmf is
// (1 - y_s, 1 - x_s, x_s + y_s - 1). Throws ConfigError if any
// x_s + y_s < 1, which no action distribution can realize.
PolicySpec probabilistic_from_region_point(const std::vector<double>& x,
                                           const std::vector<double>& y);

// Plain ARQ comparison policy: serves the fresh queue with the larger
// expected drain (1-e_j)*q1_uj, never codes.
Action uncoded_decide(const QueueState& q, const StateErasure& prof);

// Slot execution for the uncoded baseline: a failed direct send keeps the
// packet in its fresh queue (retransmit until acknowledged); nothing is ever
// diverted, so q2 buffers stay empty. Coded is a no-op here.
ApplyResult apply_uncoded(QueueState q, Action a, int z1, int z2);

}  // namespace bpec
