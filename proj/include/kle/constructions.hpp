#pragma once

#include <stdexcept>

#include "kle/bits.hpp"
#include "kle/ideal_cipher.hpp"
#include "kle/permutation.hpp"

namespace kle {

// The four key-length extension constructions, as pure maps over an ideal
// primitive. Forward maps are bijections for every key; fx/de/em expose the
// matching inverse.

struct FxKey {
  Word k1 = 0;  // cipher key, key_bits wide
  Word k2 = 0;  // whitening key, block_bits wide
};

struct DeKey {
  Word k1 = 0;
  Word k2 = 0;
};

struct FfxKey {
  Word k1 = 0;  // function key
  Word k2 = 0;  // input whitening key, in_bits wide
};

namespace detail {
inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace detail

// E_{k1}(x ^ k2) ^ k2, the same whitening key on both sides.
inline Word fx_enc(IdealCipher& e, const FxKey& key, Word x) {
  detail::require(key.k1 < pow2(e.key_bits()), "fx key k1 width mismatch");
  detail::require(key.k2 < pow2(e.block_bits()) && x < pow2(e.block_bits()),
                  "fx block width mismatch");
  return e.enc(key.k1, x ^ key.k2) ^ key.k2;
}

inline Word fx_dec(IdealCipher& e, const FxKey& key, Word y) {
  detail::require(key.k1 < pow2(e.key_bits()), "fx key k1 width mismatch");
  detail::require(key.k2 < pow2(e.block_bits()) && y < pow2(e.block_bits()),
                  "fx block width mismatch");
  return e.dec(key.k1, y ^ key.k2) ^ key.k2;
}

// F_{k1}(x ^ k2); no outer xor.
inline Word ffx_eval(RandomFunction& f, const FfxKey& key, Word x) {
  detail::require(key.k1 < pow2(f.key_bits()), "ffx key k1 width mismatch");
  detail::require(key.k2 < pow2(f.in_bits()) && x < pow2(f.in_bits()), "ffx input width mismatch");
  return f.eval(key.k1, x ^ key.k2);
}

// E_{k2}(E_{k1}(x)).
inline Word de_enc(IdealCipher& e, const DeKey& key, Word x) {
  detail::require(key.k1 < pow2(e.key_bits()) && key.k2 < pow2(e.key_bits()),
                  "de key width mismatch");
  detail::require(x < pow2(e.block_bits()), "de block width mismatch");
  return e.enc(key.k2, e.enc(key.k1, x));
}

inline Word de_dec(IdealCipher& e, const DeKey& key, Word y) {
  detail::require(key.k1 < pow2(e.key_bits()) && key.k2 < pow2(e.key_bits()),
                  "de key width mismatch");
  detail::require(y < pow2(e.block_bits()), "de block width mismatch");
  return e.dec(key.k1, e.dec(key.k2, y));
}

// P(x ^ k2) ^ k2 over a single permutation (the keyless special case of fx).
inline Word em_enc(const Permutation& p, Word k2, Word x) {
  detail::require(k2 < pow2(p.width()) && x < pow2(p.width()), "em width mismatch");
  return p.fwd(x ^ k2) ^ k2;
}

inline Word em_dec(const Permutation& p, Word k2, Word y) {
  detail::require(k2 < pow2(p.width()) && y < pow2(p.width()), "em width mismatch");
  return p.inv(y ^ k2) ^ k2;
}

}  // namespace kle
