#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kle/bits.hpp"
#include "kle/rng.hpp"

namespace kle {

// A permutation on {0,1}^width with its inverse table kept alongside.
// Immutable after construction and safe to share between threads.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int width);
  static Permutation from_table(int width, std::vector<Word> table);

  int width() const { return width_; }
  std::size_t size() const { return table_.size(); }

  Word fwd(Word x) const { return table_[x]; }
  Word inv(Word y) const { return inv_table_[y]; }

  const std::vector<Word>& table() const { return table_; }
  const std::vector<Word>& inv_table() const { return inv_table_; }

  bool operator==(const Permutation& o) const { return width_ == o.width_ && table_ == o.table_; }

  std::string to_json() const;
  static Permutation from_json(const std::string& text);

 private:
  int width_ = 0;
  std::vector<Word> table_;
  std::vector<Word> inv_table_;
};

// Uniform sample over all (2^width)! permutations via Fisher-Yates.
// Width 1..20 (a width-20 table holds 1M entries).
Permutation sample_permutation(int width, Rng& rng);

// Uniform injection [D] -> [R] represented 0-based: a table of D distinct
// values in [0, R).
std::vector<Word> sample_injection(std::uint64_t domain, std::uint64_t range, Rng& rng);

// Lexicographic rank of a small permutation table among all n! orderings.
std::uint64_t permutation_rank(const std::vector<Word>& table);

std::uint64_t factorial(unsigned n);

}  // namespace kle
