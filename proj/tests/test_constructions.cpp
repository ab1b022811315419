#include <doctest.h>

#include <set>

#include "kle/constructions.hpp"

using namespace kle;

TEST_CASE("fx matches the defining equation on a hand-checked table") {
  // E_{k1} = [2,0,3,1], k2 = 1: fx(0) = E(0^1)^1 = E(1)^1 = 0^1 = 1.
  IdealCipher e = ideal_cipher_from_tables(0, 2, {{2, 0, 3, 1}});
  FxKey key{0, 1};
  CHECK(fx_enc(e, key, 0) == 1);
  CHECK(fx_enc(e, key, 1) == 3);  // E(0)^1 = 2^1
  CHECK(fx_dec(e, key, 1) == 0);
}

TEST_CASE("fx with zero whitening is the bare cipher") {
  Rng r(1, 0);
  IdealCipher e = sample_ideal_cipher(2, 4, r);
  FxKey key{3, 0};
  for (Word x = 0; x < 16; ++x) CHECK(fx_enc(e, key, x) == e.enc(3, x));
}

TEST_CASE("fx round trips") {
  Rng r(2, 0);
  IdealCipher e = sample_ideal_cipher(3, 5, r);
  FxKey key{5, 19};
  for (Word x = 0; x < 32; ++x) CHECK(fx_dec(e, key, fx_enc(e, key, x)) == x);
}

TEST_CASE("de matches the hand evaluation and inverts") {
  // E_{k1} = [1,0,3,2], E_{k2} = [2,3,0,1]: de(0) = E_{k2}(1) = 3.
  IdealCipher e = ideal_cipher_from_tables(1, 2, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  DeKey key{0, 1};
  CHECK(de_enc(e, key, 0) == 3);
  for (Word x = 0; x < 4; ++x) CHECK(de_dec(e, key, de_enc(e, key, x)) == x);
}

TEST_CASE("de with an identity inner permutation is single encryption") {
  Rng r(3, 0);
  Permutation outer = sample_permutation(3, r);
  IdealCipher e = ideal_cipher_from_tables(
      1, 3, {Permutation::identity(3).table(), outer.table()});
  DeKey key{0, 1};
  for (Word x = 0; x < 8; ++x) CHECK(de_enc(e, key, x) == e.enc(1, x));
}

TEST_CASE("ffx is a table lookup at the shifted input") {
  // k=1, n=2, m=1 with H_1 = [1,0,0,1], k2 = 2: ffx(0) = H_1(2) = 0.
  RandomFunction h = random_function_from_table(1, 2, 1, {0, 0, 0, 0, 1, 0, 0, 1});
  FfxKey key{1, 2};
  CHECK(ffx_eval(h, key, 0) == 0);
  CHECK(ffx_eval(h, key, 2) == 1);  // H_1(0)
}

TEST_CASE("ffx zero whitening and the shift symmetry") {
  Rng r(4, 0);
  RandomFunction h = sample_random_function(2, 3, 2, r);
  FfxKey key{2, 0};
  for (Word x = 0; x < 8; ++x) CHECK(ffx_eval(h, key, x) == h.eval(2, x));
  // Shifting k2 by delta equals shifting the input by delta.
  for (Word delta = 0; delta < 8; ++delta) {
    FfxKey a{1, 5};
    FfxKey b{1, static_cast<Word>(5 ^ delta)};
    for (Word x = 0; x < 8; ++x) CHECK(ffx_eval(h, a, x) == ffx_eval(h, b, x ^ delta));
  }
}

TEST_CASE("em whitening and the hidden period") {
  Rng r(5, 0);
  SUBCASE("zero key is the bare permutation") {
    Permutation p = sample_permutation(4, r);
    for (Word x = 0; x < 16; ++x) CHECK(em_enc(p, 0, x) == p.fwd(x));
  }
  SUBCASE("g(x) = em(x) ^ P(x) has period k2, exhaustively") {
    for (int n = 2; n <= 8; n += 2) {
      Rng rr(6, n);
      Permutation p = sample_permutation(n, rr);
      for (Word k2 = 1; k2 < pow2(n); ++k2) {
        for (Word x = 0; x < pow2(n); ++x) {
          Word g_x = em_enc(p, k2, x) ^ p.fwd(x);
          Word g_shift = em_enc(p, k2, x ^ k2) ^ p.fwd(x ^ k2);
          CHECK(g_x == g_shift);
        }
      }
    }
  }
  SUBCASE("round trip") {
    Permutation p = sample_permutation(5, r);
    for (Word x = 0; x < 32; ++x) CHECK(em_dec(p, 21, em_enc(p, 21, x)) == x);
  }
}

TEST_CASE("every construction's forward map is a bijection per key") {
  Rng r(7, 0);
  IdealCipher e = sample_ideal_cipher(2, 6, r);
  RandomFunction h = sample_random_function(2, 4, 4, r);
  for (Word k1 = 0; k1 < 4; ++k1) {
    std::set<Word> fx_out, de_out;
    for (Word x = 0; x < 64; ++x) {
      CHECK(fx_out.insert(fx_enc(e, FxKey{k1, 9}, x)).second);
      CHECK(de_out.insert(de_enc(e, DeKey{k1, 3}, x)).second);
    }
  }
}

TEST_CASE("width mismatches are rejected") {
  Rng r(8, 0);
  IdealCipher e = sample_ideal_cipher(2, 3, r);
  CHECK_THROWS(fx_enc(e, FxKey{4, 0}, 0));   // k1 too wide
  CHECK_THROWS(fx_enc(e, FxKey{0, 8}, 0));   // k2 too wide
  CHECK_THROWS(de_enc(e, DeKey{0, 4}, 0));
  CHECK_THROWS(em_enc(Permutation::identity(3), 0, 8));
  RandomFunction h = sample_random_function(1, 2, 2, r);
  CHECK_THROWS(ffx_eval(h, FfxKey{2, 0}, 0));
}
