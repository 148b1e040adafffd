#include <random>

#include "bpec/errors.hpp"
#include "bpec/scheduler.hpp"
#include "doctest.h"

using namespace bpec;

namespace {

StateErasure profile(double e1, double e2, double e11) {
  StateErasure p;
  p.e11 = e11;
  p.e10 = e1 - e11;
  p.e01 = e2 - e11;
  p.e00 = 1.0 - e1 - e2 + e11;
  return p;
}

}  // namespace

TEST_CASE("max-weight decisions") {
  StateErasure p = profile(0.2, 0.4, 0.1);
  SUBCASE("fresh traffic for user 1 only") {
    CHECK(max_weight_decide({5, 0, 0, 0}, p) == Action::Direct1);
  }
  SUBCASE("only overheard packets queue") {
    CHECK(max_weight_decide({0, 10, 0, 10}, p) == Action::Coded);
  }
  SUBCASE("hand-evaluated weights") {
    // w1 = 0.8*3 + 0.1*(3-1) = 2.6, w2 = 0.6*2 + 0.3*0 = 1.2,
    // w3 = 0.8*1 + 0.6*2 = 2.0
    CHECK(max_weight_decide({3, 1, 2, 2}, p) == Action::Direct1);
  }
  SUBCASE("all empty ties to the first action") {
    CHECK(max_weight_decide({0, 0, 0, 0}, p) == Action::Direct1);
  }
  SUBCASE("scale invariance") {
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<std::int64_t> q(0, 12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
      double e1 = u(rng) * 0.95;
      double e2 = u(rng) * 0.95;
      StateErasure pr = profile(e1, e2, u(rng) * std::min(e1, e2));
      QueueState qs{q(rng), q(rng), q(rng), q(rng)};
      QueueState scaled{qs.q1_u1 * 7, qs.q2_u1 * 7, qs.q1_u2 * 7,
                        qs.q2_u2 * 7};
      CHECK(max_weight_decide(qs, pr) == max_weight_decide(scaled, pr));
    }
  }
  SUBCASE("never picks an empty source unless everything is empty") {
    std::mt19937_64 rng(654);
    std::uniform_int_distribution<std::int64_t> q(0, 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      double e1 = u(rng) * 0.95;
      double e2 = u(rng) * 0.95;
      StateErasure pr = profile(e1, e2, u(rng) * std::min(e1, e2));
      QueueState qs{q(rng), q(rng), q(rng), q(rng)};
      if (qs.total() == 0) continue;
      Action a = max_weight_decide(qs, pr);
      if (a == Action::Direct1) CHECK(qs.q1_u1 > 0);
      if (a == Action::Direct2) CHECK(qs.q1_u2 > 0);
      if (a == Action::Coded) CHECK(qs.q2_u1 + qs.q2_u2 > 0);
    }
  }
}

TEST_CASE("probabilistic policy from a region point") {
  SUBCASE("always coded") {
    PolicySpec p = probabilistic_from_region_point({1.0}, {1.0});
    CHECK(p.action_pmf[0][2] == doctest::Approx(1.0));
  }
  SUBCASE("direct substitution") {
    PolicySpec p = probabilistic_from_region_point({0.7}, {0.6});
    CHECK(p.action_pmf[0][0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.action_pmf[0][1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(p.action_pmf[0][2] == doctest::Approx(0.3).epsilon(1e-12));
  }
  SUBCASE("always direct 1") {
    PolicySpec p = probabilistic_from_region_point({1.0}, {0.0});
    CHECK(p.action_pmf[0][0] == doctest::Approx(1.0));
  }
  SUBCASE("unrealizable point") {
    CHECK_THROWS_AS(probabilistic_from_region_point({0.4}, {0.4}),
                    ConfigError);
  }
  SUBCASE("rows validated") {
    CHECK_THROWS_AS(PolicySpec::probabilistic({{0.5, 0.2, 0.2}}), ConfigError);
    CHECK_THROWS_AS(PolicySpec::probabilistic({{1.1, -0.1, 0.0}}),
                    ConfigError);
  }
}

TEST_CASE("apply_action") {
  SUBCASE("direct delivery") {
    auto res = apply_action({1, 0, 0, 0}, Action::Direct1, 0, 1);
    CHECK(res.queues.q1_u1 == 0);
    CHECK(res.delivered_u1 == 1);
    CHECK(res.flows.f13_u1 == 1);
  }
  SUBCASE("overheard diversion") {
    auto res = apply_action({1, 0, 0, 0}, Action::Direct1, 1, 0);
    CHECK(res.queues.q1_u1 == 0);
    CHECK(res.queues.q2_u1 == 1);
    CHECK(res.flows.f12_u1 == 1);
    CHECK(res.delivered_u1 == 0);
  }
  SUBCASE("erased at both keeps the packet fresh") {
    auto res = apply_action({1, 0, 0, 0}, Action::Direct1, 1, 1);
    CHECK(res.queues.q1_u1 == 1);
    CHECK(res.flows.f12_u1 == 0);
  }
  SUBCASE("coded serves each side independently") {
    auto res = apply_action({0, 1, 0, 1}, Action::Coded, 0, 1);
    CHECK(res.queues.q2_u1 == 0);
    CHECK(res.queues.q2_u2 == 1);
    CHECK(res.delivered_u1 == 1);
    CHECK(res.delivered_u2 == 0);
    CHECK(res.flows.f23_u1 == 1);
  }
  SUBCASE("coded with one side empty degenerates to a retransmission") {
    auto res = apply_action({0, 3, 0, 0}, Action::Coded, 0, 0);
    CHECK(res.queues.q2_u1 == 2);
    CHECK(res.delivered_u1 == 1);
    CHECK(res.flows.f23_u2 == 0);
  }
  SUBCASE("empty sources are legal no-ops") {
    for (Action a : {Action::Direct1, Action::Direct2, Action::Coded}) {
      auto res = apply_action({0, 0, 0, 0}, a, 0, 0);
      CHECK(res.queues.total() == 0);
      CHECK(res.delivered_u1 + res.delivered_u2 == 0);
    }
  }
}

TEST_CASE("flow algebra and conservation under random drive") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> act(0, 2);
  QueueState q;
  std::int64_t arrivals1 = 0, arrivals2 = 0, delivered1 = 0, delivered2 = 0;
  for (int t = 0; t < 5000; ++t) {
    if (coin(rng)) {
      ++q.q1_u1;
      ++arrivals1;
    }
    if (coin(rng)) {
      ++q.q1_u2;
      ++arrivals2;
    }
    auto res =
        apply_action(q, static_cast<Action>(act(rng)), coin(rng), coin(rng));
    q = res.queues;
    delivered1 += res.delivered_u1;
    delivered2 += res.delivered_u2;
    CHECK(res.flows.f12_u1 + res.flows.f13_u1 <= 1);
    CHECK(res.flows.f12_u2 + res.flows.f13_u2 <= 1);
    CHECK(res.flows.f23_u1 <= 1);
    CHECK(res.flows.f23_u2 <= 1);
    CHECK(arrivals1 == delivered1 + q.q1_u1 + q.q2_u1);
    CHECK(arrivals2 == delivered2 + q.q1_u2 + q.q2_u2);
  }
}

TEST_CASE("uncoded baseline") {
  StateErasure p = profile(0.2, 0.4, 0.1);
  CHECK(uncoded_decide({3, 0, 2, 0}, p) == Action::Direct1);  // 2.4 vs 1.2
  CHECK(uncoded_decide({1, 0, 9, 0}, p) == Action::Direct2);
  CHECK(uncoded_decide({0, 5, 0, 5}, p) == Action::Direct1);  // all-zero tie

  SUBCASE("failed sends stay fresh") {
    auto res = apply_uncoded({1, 0, 0, 0}, Action::Direct1, 1, 0);
    CHECK(res.queues.q1_u1 == 1);
    CHECK(res.queues.q2_u1 == 0);
    CHECK(res.delivered_u1 == 0);
  }
  SUBCASE("successful sends deliver") {
    auto res = apply_uncoded({1, 0, 0, 0}, Action::Direct1, 0, 1);
    CHECK(res.queues.q1_u1 == 0);
    CHECK(res.delivered_u1 == 1);
  }
}
