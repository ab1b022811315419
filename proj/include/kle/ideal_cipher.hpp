#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kle/bits.hpp"
#include "kle/permutation.hpp"
#include "kle/rng.hpp"

namespace kle {

// A family of independent uniform permutations on {0,1}^block_bits indexed by
// a key_bits-bit key, with forward and inverse access.
//
// Two modes. Full-table mode samples every per-key permutation up front and
// requires key_bits + block_bits <= 20. Lazy mode defers sampling: each
// queried point is drawn uniformly from the unused part of the co-domain
// (rejection-free via a shrinking pool), so the induced distribution over
// transcripts is exactly that of full-table mode.
//
// Lazy instances are single-writer: confine to one thread or guard mutation
// externally. Full-table instances are immutable after sampling.
class IdealCipher {
 public:
  IdealCipher() = default;

  int key_bits() const { return key_bits_; }
  int block_bits() const { return block_bits_; }
  bool lazy() const { return lazy_; }

  Word enc(Word key, Word x);
  Word dec(Word key, Word y);

  // Full-table view of one key's permutation (full mode only).
  const Permutation& perm(Word key) const;

  std::string to_json() const;  // full mode only

 private:
  friend IdealCipher sample_ideal_cipher(int key_bits, int block_bits, Rng& rng, bool lazy);
  friend IdealCipher ideal_cipher_from_tables(int key_bits, int block_bits,
                                              std::vector<std::vector<Word>> tables);

  struct LazyKeyState {
    std::unordered_map<Word, Word> fwd;
    std::unordered_map<Word, Word> bwd;
    std::vector<Word> unused_outputs;
    std::vector<Word> unused_inputs;
  };

  LazyKeyState& lazy_state(Word key);
  void bind(LazyKeyState& st, Word x, Word y);

  int key_bits_ = 0;
  int block_bits_ = 0;
  bool lazy_ = false;
  std::vector<Permutation> tables_;                  // full mode
  std::unordered_map<Word, LazyKeyState> per_key_;   // lazy mode
  Rng rng_;                                          // lazy mode draws
};

// E chosen uniformly from the set of key-indexed permutation families.
// key_bits may be 0 (a single permutation). Pass lazy = true to defer
// sampling; full-table mode requires key_bits + block_bits <= 20.
IdealCipher sample_ideal_cipher(int key_bits, int block_bits, Rng& rng, bool lazy = false);

// Deterministic construction from explicit per-key tables (tests, reductions).
IdealCipher ideal_cipher_from_tables(int key_bits, int block_bits,
                                     std::vector<std::vector<Word>> tables);

// A uniformly random function {0,1}^key_bits x {0,1}^in_bits -> {0,1}^out_bits
// with consistent repeated queries. Lazy unless the full table fits 2^20.
class RandomFunction {
 public:
  RandomFunction() = default;

  int key_bits() const { return key_bits_; }
  int in_bits() const { return in_bits_; }
  int out_bits() const { return out_bits_; }

  Word eval(Word key, Word x);

  std::string to_json() const;  // full mode only

 private:
  friend RandomFunction sample_random_function(int key_bits, int in_bits, int out_bits, Rng& rng,
                                               bool lazy);
  friend RandomFunction random_function_from_table(int key_bits, int in_bits, int out_bits,
                                                   std::vector<Word> table);

  int key_bits_ = 0;
  int in_bits_ = 0;
  int out_bits_ = 0;
  bool lazy_ = false;
  std::vector<Word> table_;
  std::unordered_map<std::uint64_t, Word> map_;
  Rng rng_;
};

RandomFunction sample_random_function(int key_bits, int in_bits, int out_bits, Rng& rng,
                                      bool lazy = false);

// Table indexed by (key << in_bits) | x.
RandomFunction random_function_from_table(int key_bits, int in_bits, int out_bits,
                                          std::vector<Word> table);

}  // namespace kle
