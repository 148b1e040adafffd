#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bpec {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random stream. Substreams of a master seed are derived from
// fixed labels so that e.g. swapping the policy of a simulation leaves the
// channel realization untouched. All draws go through uniform01(), which is
// fully specified by the standard (mt19937_64), so trajectories are
// reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t master, std::uint64_t label) {
    return Rng(splitmix64(master ^ splitmix64(label)));
  }

  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Inverse-CDF walk; pmf entries must be nonnegative and sum to ~1.
  int categorical(const std::vector<double>& pmf) {
    double u = uniform01();
    double acc = 0.0;
    int last_positive = 0;
    for (int i = 0; i < static_cast<int>(pmf.size()); ++i) {
      if (pmf[i] > 0.0) last_positive = i;
      acc += pmf[i];
      if (u < acc) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bpec
