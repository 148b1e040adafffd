#include <benchmark/benchmark.h>

#include <numbers>

#include "bpec/channel.hpp"
#include "bpec/regions.hpp"
#include "bpec/simulator.hpp"

namespace {

using namespace bpec;

ChannelModel bursty_channel() {
  return from_gilbert_elliott({0.2, 0.2, 0.3, 0.3});
}

void BM_BoundaryRay(benchmark::State& state) {
  ChannelModel model = bursty_channel();
  ErasureProfile profile = erasure_profile(model, 1);
  std::vector<double> pi = stationary_distribution(model);
  for (auto _ : state) {
    BoundaryPoint bp =
        boundary_point(profile, pi, std::numbers::pi / 4.0, true);
    benchmark::DoNotOptimize(bp.radius);
  }
}
BENCHMARK(BM_BoundaryRay);

void BM_BoundarySweep(benchmark::State& state) {
  ChannelModel model = bursty_channel();
  const int directions = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Polygon poly = boundary({RegionForm::Inner, 1}, model, directions);
    benchmark::DoNotOptimize(poly.size());
  }
}
BENCHMARK(BM_BoundarySweep)->Arg(33)->Arg(181);

void BM_MinkowskiRegion(benchmark::State& state) {
  ChannelModel model = bursty_channel();
  for (auto _ : state) {
    Polygon poly = minkowski_region(model);
    benchmark::DoNotOptimize(poly.size());
  }
}
BENCHMARK(BM_MinkowskiRegion);

void BM_SimulateSlots(benchmark::State& state) {
  SimConfig config{bursty_channel(), PolicySpec::max_weight(),
                   0.3,  0.3, state.range(0), 1, 7};
  for (auto _ : state) {
    SimStats stats = run(config);
    benchmark::DoNotOptimize(stats.delivered_u1);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSlots)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
