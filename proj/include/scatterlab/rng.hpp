// Counter-based random streams.  Every value is a pure function of
// (seed, stream id, counter), so path ensembles are reproducible
// independently of ensemble size or how work is partitioned.
#pragma once

#include <cmath>
#include <cstdint>

#include "scatterlab/grid.hpp"

namespace scatterlab {

// SplitMix64 finalizer; full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix64(seed ^ mix64(stream_id))) {}

  // Uniform in (0, 1]; never returns 0 so log() is safe.
  double uniform(std::uint64_t counter) const {
    std::uint64_t z = mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
    return ((z >> 11) + 1) * 0x1.0p-53;
  }

  // Box-Muller pair from counters (c, c+1).
  void normal_pair(std::uint64_t counter, double* z0, double* z1) const {
    double u1 = uniform(counter);
    double u2 = uniform(counter + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    *z0 = r * std::cos(2.0 * kPi * u2);
    *z1 = r * std::sin(2.0 * kPi * u2);
  }

 private:
  std::uint64_t key_;
};

// Counter namespaces so initial sampling and stepping never collide.
inline std::uint64_t counter_init(int slot) {
  return (0x1ULL << 56) + static_cast<std::uint64_t>(slot);
}
inline std::uint64_t counter_step(long step, int slot) {
  return (0x2ULL << 56) + 8ULL * static_cast<std::uint64_t>(step) +
         static_cast<std::uint64_t>(slot);
}

}  // namespace scatterlab
