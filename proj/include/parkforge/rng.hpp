#pragma once

#include <cstdint>
#include <random>

namespace parkforge {

/// Seeded generator. Element builders each get a substream keyed by
/// (seed, stream, index) so build order and threading do not change results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t k = mix(seed);
    k = mix(k ^ (stream + 0x9e3779b97f4a7c15ULL));
    k = mix(k ^ (index + 0xbf58476d1ce4e5b9ULL));
    return Rng(k);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits. Spelled out instead of using
  /// std::uniform_real_distribution so results match across standard libraries.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace parkforge
