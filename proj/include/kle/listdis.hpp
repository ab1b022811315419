#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kle/bits.hpp"
#include "kle/games.hpp"
#include "kle/rng.hpp"

namespace kle::listdis {

// ---------------------------------------------------------------------------
// Promise-problem instances (lists are 0-based tables [D] -> [R])
// ---------------------------------------------------------------------------

enum class Problem { kEd, kOneEd, kOneLd };

struct EdInstance {
  std::uint64_t domain = 0;  // D
  std::uint64_t range = 0;   // R
  std::vector<Word> list;    // D entries in [0, R)
  int cls = 0;               // number of collision pairs

  std::string to_json(Problem p) const;
};

struct LdInstance {
  std::uint64_t domain = 0;  // D (even); each list has D/2 entries
  std::uint64_t range = 0;
  std::vector<Word> l0, l1;  // injective; |Im(l0) n Im(l1)| = cls
  int cls = 0;

  std::string to_json() const;
  static LdInstance from_json(const std::string& text);
};

int count_collision_pairs(const std::vector<Word>& list);
int count_common_values(const std::vector<Word>& l0, const std::vector<Word>& l1);
bool is_injective(const std::vector<Word>& list);

// Witness relations.
bool ed_relation(const EdInstance& inst, std::pair<std::uint64_t, std::uint64_t> w);
bool ld_relation(const LdInstance& inst, std::pair<std::uint64_t, std::uint64_t> w);

// Uniform over the stated class by rejection from uniform lists; throws after
// too many rejections (infeasible parameters). attempts, when given, receives
// the number of draws used (acceptance-rate probes).
EdInstance gen_ed_instance(Problem p, std::uint64_t domain, std::uint64_t range, int cls, Rng& rng,
                           std::uint64_t* attempts = nullptr);
LdInstance gen_ld_instance(std::uint64_t domain, std::uint64_t range, int cls, Rng& rng,
                           std::uint64_t* attempts = nullptr);

// ---------------------------------------------------------------------------
// Query-counted oracle access
// ---------------------------------------------------------------------------

// List access through a shared counter, so reductions can assert their
// stated query budgets on whatever algorithm they wrap.
class CountedList {
 public:
  CountedList() = default;
  CountedList(std::vector<Word> values, std::shared_ptr<std::uint64_t> counter)
      : values_(std::move(values)), counter_(std::move(counter)) {}

  std::uint64_t size() const { return values_.size(); }
  Word operator()(std::uint64_t i) const {
    ++*counter_;
    return values_.at(i);
  }
  const std::shared_ptr<std::uint64_t>& counter() const { return counter_; }

 private:
  std::vector<Word> values_;
  std::shared_ptr<std::uint64_t> counter_;
};

// Decision algorithm for 1LD on fixed-size lists: outputs 1 for "one common
// element". Search algorithm returns a candidate witness or none.
using LdDecider = std::function<int(const CountedList& l0, const CountedList& l1, Rng& rng)>;
using LdSearcher = std::function<std::optional<std::pair<std::uint64_t, std::uint64_t>>(
    const CountedList& l0, const CountedList& l1, Rng& rng)>;

// Brute-force oracles (hash join over full reads).
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search(const EdInstance& inst);
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search(const LdInstance& inst);
int brute_force_decide(const CountedList& l0, const CountedList& l1);
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search_counted(
    const CountedList& l0, const CountedList& l1);

// ---------------------------------------------------------------------------
// The reduction chain
// ---------------------------------------------------------------------------

// 1ED-s from 1LD-s: split the list in two halves through a random
// permutation, run the 1LD searcher, map the witness back. Succeeds with
// probability >= Adv(searcher)/2 over the split (exactly (D/2)/(D-1) for the
// split to separate the collision).
std::optional<std::pair<std::uint64_t, std::uint64_t>> reduce_eds_from_lds(
    const LdSearcher& searcher, const EdInstance& inst, Rng& rng,
    std::shared_ptr<std::uint64_t> counter);

struct BinarySearchResult {
  std::pair<std::uint64_t, std::uint64_t> witness{0, 0};
  std::uint64_t decider_queries = 0;  // total list reads by the decision calls
  std::uint64_t decider_runs = 0;
};

// 1LD-s from 1LD-d by binary search over index ranges. Per round the three
// quadrant pairs (l,l), (l,r), (r,l) are tested and (r,r) is the untested
// default; sublists are padded back to full size with halves of a fresh
// random injection, merged by domain membership. D must be a power of two.
// The decider runs on lists of D/2 entries each and may err; the caller
// checks the returned witness.
BinarySearchResult binary_search_lds(const LdDecider& decider, const std::vector<Word>& l0,
                                     const std::vector<Word>& l1, std::uint64_t range, Rng& rng);

// Number of repetitions the amplifier uses: ceil(4.5 (t+1) ln2 / delta^2).
std::uint64_t amplify_repetitions(int t, double delta);

// Decision amplification: run the base decider n times, average, and compare
// against p0 + delta/2. Per-class error <= 2^-t when the base advantage
// p1 - p0 is at least delta.
int amplify_decision(const LdDecider& base, double p0, double delta, int t, const CountedList& l0,
                     const CountedList& l1, Rng& rng);

// ---------------------------------------------------------------------------
// Double encryption -> 1LD
// ---------------------------------------------------------------------------

// The reduction's sampled state: rho maps cipher keys to list slots, pi is
// the construction permutation, f is a cipher family keyed by list values.
struct DeLdOracles {
  int key_bits = 0;
  int block_bits = 0;
  const LdInstance* instance = nullptr;
  Permutation rho;  // on {0,1}^k
  Permutation pi;   // on {0,1}^n
  IdealCipher f;    // keyed by ceil(lg R) bits

  Word ic(Word key, Word x);       // simulated E_K(x)
  Word ic_inv(Word key, Word y);   // simulated E_K^{-1}(y)
  Word cons(Word x) const { return pi.fwd(x); }
  Word cons_inv(Word y) const { return pi.inv(y); }
};

DeLdOracles make_de_ld_oracles(const LdInstance& inst, int key_bits, int block_bits, Rng& rng);

// Runs an SPRP adversary against the simulated world and returns its output
// bit. Requires 2^key_bits == inst.domain and inst.range >= 2^key_bits.
int de_to_ld_adversary(games::Strategy& sprp_adv, const LdInstance& inst, int key_bits,
                       int block_bits, Rng& rng);

}  // namespace kle::listdis
