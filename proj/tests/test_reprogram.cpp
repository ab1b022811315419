#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "kle/reprogram.hpp"
#include "kle/stats.hpp"

using namespace kle;
using namespace kle::games;

TEST_CASE("an empty script leaves f1 equal to f0") {
  Rng rng(1, 0);
  auto s = sample_reprogrammed_cipher(ReprogramScript{}, 2, 3, rng);
  for (Word k = 0; k < 4; ++k) {
    for (Word x = 0; x < 8; ++x) CHECK(s.f0.enc(k, x) == s.f1.enc(k, x));
  }
  CHECK(s.t_fwd.empty());
}

TEST_CASE("reprogrammed points replay the construction table") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed, 0);
    ReprogramScript script{{0, 2}, {1}};
    auto s = sample_reprogrammed_cipher(script, 1, 2, rng);
    for (const auto& [m, y] : s.t_fwd) {
      CHECK((s.f1.enc(s.key1, m ^ s.key2) ^ s.key2) == y);
      CHECK(s.t_bwd.at(y) == m);
    }
    // Off the reprogrammed inputs, f1 agrees with f0 pointwise.
    for (Word x = 0; x < 4; ++x) {
      if (!s.in_set.count(x) && !s.in_set2.count(x)) {
        CHECK(s.f1.enc(s.key1, x) == s.f0.enc(s.key1, x));
      }
    }
    // Other keys are untouched.
    Word other = s.key1 ^ 1;
    for (Word x = 0; x < 4; ++x) CHECK(s.f1.enc(other, x) == s.f0.enc(other, x));
    // Per-key bijectivity survives the reprogramming.
    std::vector<bool> seen(4, false);
    for (Word x = 0; x < 4; ++x) {
      Word y = s.f1.enc(s.key1, x);
      CHECK_FALSE(seen[y]);
      seen[y] = true;
    }
  }
}

TEST_CASE("the q'=1 reprogramming rule is exactly uniform, by enumeration") {
  // Independent reference model: enumerate every equally likely draw
  // (Y_1, f0 restricted to K1, K2) and replay the reprogramming rule; each
  // of the 24 possible f1(K1,.) tables must appear equally often.
  std::vector<std::vector<Word>> perms;
  std::vector<Word> t{0, 1, 2, 3};
  do {
    perms.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));

  const Word m1 = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (Word y1 = 0; y1 < 4; ++y1) {
    for (const auto& f0 : perms) {
      for (Word k2 = 0; k2 < 4; ++k2) {
        std::vector<Word> f1 = f0;
        Word in1 = m1 ^ k2;
        Word out1 = y1 ^ k2;
        Word preimage = 0;
        for (Word x = 0; x < 4; ++x) {
          if (f0[x] == out1) preimage = x;
        }
        Word displaced = f0[in1];
        f1[in1] = out1;
        if (preimage != in1) f1[preimage] = displaced;
        ++counts[permutation_rank(f1)];
        ++total;
      }
    }
  }
  REQUIRE(counts.size() == 24);
  for (const auto& [rank, c] : counts) CHECK(c == total / 24);
}

TEST_CASE("the reprogrammed key's permutation is uniform") {
  // Smaller companion of the acceptance run: forward-only script, 2e5 draws.
  Rng rng(3, 0);
  std::vector<std::uint64_t> counts(24, 0);
  const int trials = 200000;
  for (int t = 0; t < trials; ++t) {
    Rng tr = rng.fork(t);
    auto s = sample_reprogrammed_cipher(ReprogramScript{{0}, {}}, 1, 2, tr);
    ++counts[permutation_rank(s.f1.perm(s.key1).table())];
  }
  CHECK(chi_square_uniform(counts).p_value > 1e-4);
}

TEST_CASE("inverse script points that alias forward answers stay consistent") {
  int aliased = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed, 1);
    // The inverse query asks for the preimage of y=1, which the forward
    // script's sampled answer may already occupy.
    ReprogramScript script{{3}, {1}};
    auto s = sample_reprogrammed_cipher(script, 1, 2, rng);
    aliased += s.t_fwd.size() == 1;
    for (const auto& [m, y] : s.t_fwd) {
      CHECK((s.f1.enc(s.key1, m ^ s.key2) ^ s.key2) == y);
    }
  }
  CHECK(aliased > 0);  // both cases exercised
  CHECK(aliased < 400);
}

TEST_CASE("colliding script points are rejected") {
  Rng rng(5, 0);
  CHECK_THROWS(sample_reprogrammed_cipher(ReprogramScript{{0, 0}, {}}, 1, 2, rng));
  CHECK_THROWS(sample_reprogrammed_cipher(ReprogramScript{{}, {2, 2}}, 1, 2, rng));
  // Script longer than the domain.
  CHECK_THROWS(sample_reprogrammed_cipher(ReprogramScript{{0, 1, 2, 3}, {0}}, 1, 2, rng));
}
