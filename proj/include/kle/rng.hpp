#pragma once

#include <cstdint>

namespace kle {

// Counter-based deterministic RNG. A generator is identified by a
// (seed, stream) pair; equal pairs always produce identical sequences and
// distinct streams are statistically independent, so Monte Carlo trials can
// be handed one stream each and run in any order or in parallel.
class Rng {
 public:
  Rng() : Rng(0, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(stream + 0xD1B54A32D192ED03ULL)),
        seed_(seed),
        stream_(stream),
        counter_(0) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    // Rejection from the top chunk keeps the draw exactly uniform.
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Child generator on an independent stream. Pure in (seed, stream,
  // substream): forking the same substream twice returns the same generator,
  // so sequential callers must use distinct substream ids (or consume
  // next_u64 output to derive fresh state).
  Rng fork(std::uint64_t substream) const {
    return Rng(seed_, mix(stream_ + 0x2545F4914F6CDD1DULL) ^ substream);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // Stafford variant 13 of the SplitMix64 finalizer.
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace kle
