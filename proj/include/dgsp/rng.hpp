#pragma once

// Seedable, splittable PRNG (xoshiro256**). Verification suites derive one
// child generator per trial via split(), so trial results are replayable and
// independent of execution order or thread scheduling. We generate our own
// uniforms and normals instead of <random> distributions so identical seeds
// give identical streams on every build.

#include <array>
#include <cmath>
#include <cstdint>

namespace dgsp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % range);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  /// Derive an independent child generator for the given stream index.
  Rng split(std::uint64_t stream) const {
    std::uint64_t x = state_[0];
    x ^= splitmix64_of(state_[1] + 0x9e3779b97f4a7c15ULL * (stream + 1));
    x ^= splitmix64_of(state_[2] ^ rotl(stream, 31));
    x ^= splitmix64_of(state_[3] + stream);
    return Rng(x);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix64_of(std::uint64_t x) { return splitmix64(x); }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace dgsp
