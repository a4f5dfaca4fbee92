#pragma once

#include "engel/bigint.hpp"

#include <cstdint>
#include <random>

namespace engel {

// Seeded generator with platform-independent sampling. std distributions are
// implementation-defined, so every draw goes through rejection sampling on the
// raw mt19937_64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > limit);
    return x % bound;
  }

  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  BigInt below(const BigInt& bound) {
    if (bound <= BigInt(UINT64_MAX)) return BigInt(below(static_cast<std::uint64_t>(bound)));
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
    for (;;) {
      BigInt x = 0;
      unsigned got = 0;
      while (got < bits) {
        x <<= 64;
        x |= engine_();
        got += 64;
      }
      x >>= (got - bits);
      if (x < bound) return x;
    }
  }

  double uniform01() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0); }

  bool coin() { return (engine_() >> 63) != 0; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace engel
