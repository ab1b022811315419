#include "kle/attacks.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "kle/qsim.hpp"

namespace kle::attacks {

std::vector<Word> exhaustive_key_search(IdealCipher& e, std::span<const PtCtPair> pairs,
                                        int key_bits) {
  if (key_bits > 24) throw std::invalid_argument("exhaustive search capped at 24 key bits");
  std::vector<Word> out;
  for (std::uint64_t k = 0; k < pow2(key_bits); ++k) {
    bool ok = true;
    for (const auto& [m, c] : pairs) {
      if (e.enc(static_cast<Word>(k), m) != c) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<Word>(k));
  }
  return out;
}

MitmResult mitm_de(IdealCipher& e, std::span<const PtCtPair> pairs, int key_bits) {
  if (key_bits > 20) throw std::invalid_argument("mitm capped at 20 key bits");
  MitmResult r;
  if (pairs.empty()) {
    for (std::uint64_t k1 = 0; k1 < pow2(key_bits); ++k1) {
      for (std::uint64_t k2 = 0; k2 < pow2(key_bits); ++k2) {
        r.keys.emplace_back(static_cast<Word>(k1), static_cast<Word>(k2));
      }
    }
    return r;
  }
  const auto [m1, c1] = pairs[0];
  std::unordered_multimap<Word, Word> mid;  // E_{K1}(M1) -> K1
  mid.reserve(pow2(key_bits));
  for (std::uint64_t k1 = 0; k1 < pow2(key_bits); ++k1) {
    ++r.cipher_evals;
    mid.emplace(e.enc(static_cast<Word>(k1), m1), static_cast<Word>(k1));
  }
  for (std::uint64_t k2 = 0; k2 < pow2(key_bits); ++k2) {
    ++r.cipher_evals;
    Word probe = e.dec(static_cast<Word>(k2), c1);
    auto [lo, hi] = mid.equal_range(probe);
    for (auto it = lo; it != hi; ++it) {
      Word k1 = it->second;
      ++r.survivors;
      bool ok = true;
      for (std::size_t i = 1; i < pairs.size() && ok; ++i) {
        r.cipher_evals += 2;
        ok = e.enc(static_cast<Word>(k2), e.enc(k1, pairs[i].first)) == pairs[i].second;
      }
      if (ok) r.keys.emplace_back(k1, static_cast<Word>(k2));
    }
  }
  std::sort(r.keys.begin(), r.keys.end());
  return r;
}

GroverResult grover_key_search(IdealCipher& e, std::span<const PtCtPair> pairs, int key_bits,
                               int iterations, Rng& rng) {
  if (key_bits < 1 || key_bits > 24) throw std::invalid_argument("grover key width out of range");
  // Resolve the oracle predicate once; the register relabeling below applies
  // it coherently to every basis state.
  std::vector<bool> marked_table(pow2(key_bits), false);
  std::size_t marked_count = 0;
  for (std::uint64_t k = 0; k < pow2(key_bits); ++k) {
    bool ok = true;
    for (const auto& [m, c] : pairs) {
      if (e.enc(static_cast<Word>(k), m) != c) {
        ok = false;
        break;
      }
    }
    marked_table[k] = ok;
    marked_count += ok;
  }

  qsim::RegisterLayout layout({{"key", key_bits}});
  qsim::StateVector state(layout);
  state.apply_h_register("key");
  auto marked = [&](qsim::BasisIndex b) { return marked_table[b]; };
  auto nonzero = [](qsim::BasisIndex b) { return b != 0; };
  for (int t = 0; t < iterations; ++t) {
    state.apply_phase_flip(marked);        // oracle
    state.apply_h_register("key");         // diffusion H (2|0><0| - 1) H
    state.apply_phase_flip(nonzero);
    state.apply_h_register("key");
  }

  GroverResult r;
  r.iterations = iterations;
  r.marked = marked_count;
  r.success_prob = state.prob_of(marked);
  r.measured_key = static_cast<Word>(state.measure_register("key", rng));
  r.success = marked_table[r.measured_key];
  return r;
}

bool Gf2Solver::add(Word row) {
  for (Word r : rows_) {
    Word lead = r & (~r + 1);
    if (row & lead) row ^= r;
  }
  if (row == 0) return false;
  // Keep rows reduced against the new row as well, so leading bits stay
  // unique.
  Word lead = row & (~row + 1);
  for (Word& r : rows_) {
    if (r & lead) r ^= row;
  }
  rows_.push_back(row);
  return true;
}

std::optional<Word> Gf2Solver::null_vector() const {
  if (rank() != n_ - 1) return std::nullopt;
  // With rank n-1 the null space is one-dimensional: s has a 1 exactly at the
  // non-pivot column plus wherever elimination forces one.
  Word pivot_mask = 0;
  for (Word r : rows_) pivot_mask |= r & (~r + 1);
  Word free_col = 0;
  for (int i = 0; i < n_; ++i) {
    if (!(pivot_mask & (Word{1} << i))) {
      free_col = Word{1} << i;
      break;
    }
  }
  Word s = free_col;
  for (Word r : rows_) {
    if (dot_gf2(r, s)) s |= r & (~r + 1);
  }
  return s;
}

SimonResult simon_recover_period(std::span<const Word> g_table, int n, Rng& rng) {
  SimonResult res;
  if (n < 1 || n > 10) {
    res.error = "n out of range [1, 10]";
    return res;
  }
  if (g_table.size() != pow2(n)) {
    res.error = "oracle table size mismatch";
    return res;
  }

  qsim::RegisterLayout layout({{"in", n}, {"out", n}});
  Gf2Solver solver(n);
  const int max_rounds = 10 * n;
  while (res.rounds < max_rounds && solver.rank() < n - 1) {
    qsim::StateVector state(layout);
    state.apply_h_register("in");
    state.apply_xor_oracle(g_table, "in", "out");
    state.apply_h_register("in");
    Rng round_rng = rng.fork(res.rounds);
    Word y = static_cast<Word>(state.measure_register("in", round_rng));
    ++res.rounds;
    res.measured.push_back(y);
    solver.add(y);
    if (solver.rank() >= n) {
      // Vectors span everything, so no nonzero s is orthogonal to all of
      // them; the promise cannot hold.
      res.error = "promise violated: measured vectors have full rank";
      return res;
    }
  }
  auto s = solver.null_vector();
  if (!s) {
    res.error = "no rank n-1 system after 10n rounds";
    return res;
  }
  // The candidate must fix g everywhere, not just at 0; a wrong-promise
  // oracle is rejected here.
  bool fixes = *s != 0;
  for (Word x = 0; fixes && x < pow2(n); ++x) fixes = g_table[x] == g_table[x ^ *s];
  if (!fixes) {
    res.error = "promise violated: recovered period does not fix g";
    return res;
  }
  res.period = *s;
  return res;
}

bool has_exact_period(std::span<const Word> g_table, int n, Word s) {
  if (s == 0 || s >= pow2(n)) return false;
  for (Word t = 1; t < pow2(n); ++t) {
    bool fixes = true;
    for (Word x = 0; x < pow2(n); ++x) {
      if (g_table[x] != g_table[x ^ t]) {
        fixes = false;
        break;
      }
    }
    if (fixes != (t == s)) return false;
  }
  return true;
}

EmSimonInstance plant_em_simon_instance(int n, Rng& rng) {
  for (int attempt = 0; attempt < 4096; ++attempt) {
    EmSimonInstance inst;
    inst.p = sample_permutation(n, rng);
    inst.k2 = static_cast<Word>(1 + rng.next_below(pow2(n) - 1));
    inst.g.resize(pow2(n));
    for (Word x = 0; x < pow2(n); ++x) {
      inst.g[x] = (inst.p.fwd(x ^ inst.k2) ^ inst.k2) ^ inst.p.fwd(x);
    }
    if (has_exact_period(inst.g, n, inst.k2)) return inst;
  }
  throw std::runtime_error("no promise-honoring even-mansour instance found");
}

FxQ2Instance plant_fx_q2_instance(int key_bits, int block_bits, Rng& rng) {
  for (int attempt = 0; attempt < 4096; ++attempt) {
    FxQ2Instance inst;
    inst.e = sample_ideal_cipher(key_bits, block_bits, rng, /*lazy=*/false);
    inst.key1 = static_cast<Word>(rng.next_below(pow2(key_bits)));
    inst.key2 = static_cast<Word>(1 + rng.next_below(pow2(block_bits) - 1));
    inst.fx_table.resize(pow2(block_bits));
    std::vector<Word> g(pow2(block_bits));
    for (Word x = 0; x < pow2(block_bits); ++x) {
      inst.fx_table[x] = inst.e.enc(inst.key1, x ^ inst.key2) ^ inst.key2;
      g[x] = inst.fx_table[x] ^ inst.e.enc(inst.key1, x);
    }
    if (has_exact_period(g, block_bits, inst.key2)) return inst;
  }
  throw std::runtime_error("no promise-honoring fx instance found");
}

FxQ2Result fx_q2_break(IdealCipher& e, const std::vector<Word>& fx_table, int key_bits,
                       int block_bits, Rng& rng) {
  FxQ2Result res;
  if (key_bits > 6 || block_bits > 5) {
    res.error = "capacity: key_bits <= 6 and block_bits <= 5";
    return res;
  }
  if (fx_table.size() != pow2(block_bits)) {
    res.error = "fx table size mismatch";
    return res;
  }
  const std::uint64_t n = pow2(block_bits);

  auto verify = [&](Word k1, Word k2, Rng& vrng) {
    for (int i = 0; i < 3; ++i) {
      Word x = static_cast<Word>(vrng.next_below(n));
      res.primitive_evals += 1;
      if ((e.enc(k1, x ^ k2) ^ k2) != fx_table[x]) return false;
    }
    return true;
  };

  for (std::uint64_t k1 = 0; k1 < pow2(key_bits); ++k1) {
    Word key1 = static_cast<Word>(k1);
    Rng cand_rng = rng.fork(k1);
    std::vector<Word> g(n);
    for (std::uint64_t x = 0; x < n; ++x) {
      res.primitive_evals += 1;
      g[x] = fx_table[x] ^ e.enc(key1, static_cast<Word>(x));
    }
    Rng simon_rng = cand_rng.fork(0x51);
    SimonResult sr = simon_recover_period(g, block_bits, simon_rng);
    res.simon_rounds += sr.rounds;
    if (!sr.period) continue;
    Rng ver_rng = cand_rng.fork(0x7e1);
    if (verify(key1, *sr.period, ver_rng)) {
      res.key1 = key1;
      res.key2 = *sr.period;
      res.ok = true;
      return res;
    }
  }
  res.error = "no candidate key verified";
  return res;
}

}  // namespace kle::attacks
