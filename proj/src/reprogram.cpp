#include "kle/reprogram.hpp"

#include <algorithm>
#include <stdexcept>

namespace kle::games {

namespace {

Word draw_outside(std::uint64_t domain, const std::vector<Word>& used, Rng& rng) {
  // Uniform over [0, domain) minus `used`, by index arithmetic over the
  // sorted exclusion list.
  std::vector<Word> sorted(used);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::uint64_t idx = rng.next_below(domain - sorted.size());
  for (Word u : sorted) {
    if (idx >= u) {
      ++idx;
    } else {
      break;
    }
  }
  return static_cast<Word>(idx);
}

}  // namespace

ReprogramSample sample_reprogrammed_cipher(const ReprogramScript& script, int key_bits,
                                           int block_bits, Rng& rng) {
  const std::uint64_t n = pow2(block_bits);
  if (script.total() > n) throw std::invalid_argument("script longer than the domain");
  {
    auto distinct = [](std::vector<Word> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!distinct(script.ev_inputs) || !distinct(script.inv_inputs)) {
      throw std::invalid_argument("scripted points must be distinct per oracle");
    }
  }

  ReprogramSample s;
  s.key_bits = key_bits;
  s.block_bits = block_bits;

  // Step 1: sample responses to the scripted construction queries.
  std::vector<Word> ms = script.ev_inputs;  // M_1..M_q
  std::vector<Word> ys;                     // Y_1..Y_q
  for (std::size_t i = 0; i < script.ev_inputs.size(); ++i) {
    Word y = draw_outside(n, ys, rng);
    ys.push_back(y);
    s.t_fwd[ms[i]] = y;
    s.t_bwd[y] = ms[i];
  }
  for (Word y : script.inv_inputs) {
    Word m;
    if (auto it = s.t_bwd.find(y); it != s.t_bwd.end()) {
      m = it->second;
    } else {
      m = draw_outside(n, ms, rng);
    }
    ms.push_back(m);
    ys.push_back(y);
    s.t_fwd[m] = y;
    s.t_bwd[y] = m;
  }

  // Step 2: f0 is an independent ideal cipher.
  s.f0 = sample_ideal_cipher(key_bits, block_bits, rng, /*lazy=*/false);

  // Step 3: reprogram f1 for consistency with the construction queries.
  s.key1 = static_cast<Word>(rng.next_below(pow2(key_bits)));
  s.key2 = static_cast<Word>(rng.next_below(n));
  const std::size_t q = ms.size();
  for (std::size_t i = 0; i < q; ++i) {
    s.in_set.insert(ms[i] ^ s.key2);
    s.out_set.insert(ys[i] ^ s.key2);
  }
  for (Word y : s.out_set) s.in_set2.insert(s.f0.dec(s.key1, y));
  for (Word x : s.in_set) s.out_set2.insert(s.f0.enc(s.key1, x));

  std::vector<std::vector<Word>> tables(pow2(key_bits));
  for (std::uint64_t k = 0; k < pow2(key_bits); ++k) {
    tables[k] = s.f0.perm(static_cast<Word>(k)).table();
  }
  auto& target = tables[s.key1];
  // f1(K1, M_i ^ K2) = Y_i ^ K2.
  for (std::size_t i = 0; i < q; ++i) {
    target[ms[i] ^ s.key2] = ys[i] ^ s.key2;
  }
  // Leftover inputs I' \ I map to O' \ O by a uniform fresh bijection.
  std::vector<Word> assigned;  // values already placed at positions I u I'
  for (Word x : s.in_set) assigned.push_back(target[x]);
  for (Word x : s.in_set2) {
    if (s.in_set.count(x)) continue;
    std::vector<Word> pool;
    for (Word y : s.out_set2) {
      if (std::find(assigned.begin(), assigned.end(), y) == assigned.end()) pool.push_back(y);
    }
    Word y = pool[rng.next_below(pool.size())];
    target[x] = y;
    assigned.push_back(y);
  }
  s.f1 = ideal_cipher_from_tables(key_bits, block_bits, std::move(tables));
  return s;
}

}  // namespace kle::games
