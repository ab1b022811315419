#pragma once

#include <bit>
#include <cstdint>

namespace kle {

// Bitstrings are unsigned integers in little-endian bit order; the width is
// carried separately by whatever object owns the value.
using Word = std::uint32_t;

inline constexpr std::uint64_t pow2(int bits) { return std::uint64_t{1} << bits; }

inline constexpr Word mask_of(int bits) {
  return bits >= 32 ? ~Word{0} : static_cast<Word>((std::uint64_t{1} << bits) - 1);
}

// Inner product of two bit vectors over GF(2).
inline int dot_gf2(Word a, Word b) { return std::popcount(a & b) & 1; }

inline constexpr bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int lg_floor(std::uint64_t v) { return 63 - std::countl_zero(v); }

// Bits needed to count 0..n inclusive.
inline int bits_for_count(std::uint64_t n) {
  int b = 0;
  while (pow2(b) < n + 1) ++b;
  return b;
}

}  // namespace kle
