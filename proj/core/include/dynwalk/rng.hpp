#pragma once

#include <cmath>
#include <cstdint>

#include "dynwalk/analytic.hpp"

// Deterministic, splittable random streams.  All stochastic modules draw
// through this header so that results are reproducible bit-for-bit for a
// fixed (seed, consumption order), independent of platform RNG libraries
// and of how work is distributed over threads.

namespace dynwalk::rng {

/// splitmix64 finalizer; also used as the seed/stream mixing function.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for logical stream `stream`, item `index`, under `master`.
/// This is the project-wide seed schedule: shard/path i uses
/// master XOR mix(stream, i), so merges are order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix64(master ^ mix64(stream * 0xd1342543de82ef95ULL + index));
}

/// xoshiro256++ with splitmix64 state expansion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via inverse CDF; one uniform consumed per deviate.
  double normal() { return analytic::normal_quantile(uniform()); }

  /// Exponential with the given rate.
  double exponential(double rate) { return -std::log(uniform()) / rate; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t v = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

} // namespace dynwalk::rng
