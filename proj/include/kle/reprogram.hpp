#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "kle/bits.hpp"
#include "kle/ideal_cipher.hpp"
#include "kle/rng.hpp"

namespace kle::games {

// Scripted non-adaptive construction queries: q' forward inputs M_1..M_q'
// followed by inverse inputs Y_{q'+1}..Y_q. Points must be distinct per
// oracle.
struct ReprogramScript {
  std::vector<Word> ev_inputs;
  std::vector<Word> inv_inputs;
  std::size_t total() const { return ev_inputs.size() + inv_inputs.size(); }
};

// One draw from the reprogrammed-cipher distribution: an independent cipher
// f0, keys (K1, K2), simulated construction tables T / T^{-1}, and f1 equal
// to f0 except reprogrammed for consistency with the scripted construction
// queries. The sets record where the reprogramming happened:
//   in_set   I  = { M_i ^ K2 },       out_set   O  = { Y_i ^ K2 },
//   in_set2  I' = { f0^{-1}(K1, y) : y in O },
//   out_set2 O' = { f0(K1, x) : x in I }.
struct ReprogramSample {
  int key_bits = 0;
  int block_bits = 0;
  Word key1 = 0;
  Word key2 = 0;
  std::unordered_map<Word, Word> t_fwd;   // T[M_i] = Y_i
  std::unordered_map<Word, Word> t_bwd;   // T^{-1}[Y_i] = M_i
  std::set<Word> in_set, out_set, in_set2, out_set2;
  IdealCipher f0;
  IdealCipher f1;
};

// Samples the distribution in three steps: (1) lazily sample the responses
// Y_i / preimages M_i for the scripted queries, (2) sample f0 as an
// independent full-table ideal cipher, (3) derive f1 from f0 by reprogramming
// key K1 so that f1(K1, M_i ^ K2) = Y_i ^ K2 and the leftover inputs
// I' \ I map onto O' \ O by a fresh random bijection.
// Requires key_bits + block_bits <= 20 (full tables) and q <= 2^block_bits.
ReprogramSample sample_reprogrammed_cipher(const ReprogramScript& script, int key_bits,
                                           int block_bits, Rng& rng);

}  // namespace kle::games
