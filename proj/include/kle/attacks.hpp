#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kle/bits.hpp"
#include "kle/ideal_cipher.hpp"
#include "kle/permutation.hpp"
#include "kle/rng.hpp"

namespace kle::attacks {

// Known plaintext/ciphertext pairs under the target key.
using PtCtPair = std::pair<Word, Word>;

// All keys K with E_K(M_i) = C_i for every pair. Zero pairs returns every key.
std::vector<Word> exhaustive_key_search(IdealCipher& e, std::span<const PtCtPair> pairs,
                                        int key_bits);

struct MitmResult {
  std::vector<std::pair<Word, Word>> keys;  // consistent (K1, K2)
  std::uint64_t survivors = 0;              // pairs matching on the first pt/ct pair
  std::uint64_t cipher_evals = 0;           // forward + inverse evaluations of E
};

// Meet-in-the-middle key recovery on double encryption: builds the table
// {E_{K1}(M_1) -> K1}, probes it with E^{-1}_{K2}(C_1), and filters survivors
// on the remaining pairs. Output set equals the brute-force 2^(2k) search.
MitmResult mitm_de(IdealCipher& e, std::span<const PtCtPair> pairs, int key_bits);

struct GroverResult {
  Word measured_key = 0;
  bool success = false;       // measured key is consistent with the pairs
  double success_prob = 0.0;  // exact, read off the statevector pre-measurement
  std::size_t marked = 0;
  int iterations = 0;
};

// Grover search over the key register with a phase oracle marking keys
// consistent with the pairs. Requires key_bits <= 24 simulator capacity.
GroverResult grover_key_search(IdealCipher& e, std::span<const PtCtPair> pairs, int key_bits,
                               int iterations, Rng& rng);

struct SimonResult {
  std::optional<Word> period;
  int rounds = 0;              // oracle circuit executions
  std::vector<Word> measured;  // the vectors y collected (each satisfies y.s = 0)
  std::string error;           // nonempty on failure
};

// Simon's period finding on g: {0,1}^n -> {0,1}^n given as a table, under the
// promise g(x) = g(x ^ s) for a hidden s != 0 and no other shift. Repeats the
// {H, xor-oracle, H, measure} round until the collected vectors have rank
// n-1, solves the GF(2) system, and verifies g(0) = g(s). Fails after 10n
// rounds without rank n-1, or when the promise is violated.
SimonResult simon_recover_period(std::span<const Word> g_table, int n, Rng& rng);

// True iff {0, s} is exactly the set of shifts fixing g (the promise Simon
// needs), checked exhaustively.
bool has_exact_period(std::span<const Word> g_table, int n, Word s);

// Planted Even-Mansour instance for the period-finding attack. Small
// permutations often produce g = em ^ P with extra accidental shifts, so the
// planter redraws until the promise holds exactly.
struct EmSimonInstance {
  Permutation p;
  Word k2 = 0;
  std::vector<Word> g;  // em_enc(x) ^ p(x)
};
EmSimonInstance plant_em_simon_instance(int n, Rng& rng);

// Planted FX instance whose true-key oracle g_{K1}(x) = FX(x) ^ E_{K1}(x)
// honors the promise (redrawn until it does).
struct FxQ2Instance {
  IdealCipher e;
  Word key1 = 0;
  Word key2 = 0;
  std::vector<Word> fx_table;
};
FxQ2Instance plant_fx_q2_instance(int key_bits, int block_bits, Rng& rng);

struct FxQ2Result {
  Word key1 = 0;
  Word key2 = 0;
  bool ok = false;
  std::uint64_t primitive_evals = 0;  // classical E evaluations while building oracles
  int simon_rounds = 0;               // total quantum oracle rounds across candidates
  // The nested quantum search of the original attack is replaced by a
  // classical sweep over K1 with a quantum Simon subroutine per candidate.
  bool classical_outer_loop = true;
  std::string error;
};

// Recovers an FX key pair from quantum access to g_{K1}(x) = FX(x) ^ E_{K1}(x):
// for each K1 candidate, runs Simon on g_{K1} and accepts the (K1, K2) that
// verifies on 3 random points. Capacity: key_bits <= 6, block_bits <= 5.
FxQ2Result fx_q2_break(IdealCipher& e, const std::vector<Word>& fx_table, int key_bits,
                       int block_bits, Rng& rng);

// GF(2) linear algebra over row bitmasks (n <= 32 columns).
class Gf2Solver {
 public:
  explicit Gf2Solver(int n) : n_(n) {}

  // Adds a row if independent; returns whether rank grew.
  bool add(Word row);
  int rank() const { return static_cast<int>(rows_.size()); }

  // The unique nonzero s with row . s = 0 for all rows, when rank == n-1.
  std::optional<Word> null_vector() const;

 private:
  int n_;
  std::vector<Word> rows_;  // reduced rows, distinct leading bits
};

}  // namespace kle::attacks
