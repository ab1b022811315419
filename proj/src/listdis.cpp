#include "kle/listdis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "kle/permutation.hpp"

namespace kle::listdis {

int count_collision_pairs(const std::vector<Word>& list) {
  std::unordered_map<Word, int> freq;
  for (Word v : list) ++freq[v];
  int pairs = 0;
  for (const auto& [v, c] : freq) pairs += c * (c - 1) / 2;
  return pairs;
}

int count_common_values(const std::vector<Word>& l0, const std::vector<Word>& l1) {
  std::unordered_set<Word> s0(l0.begin(), l0.end());
  std::unordered_set<Word> seen;
  int common = 0;
  for (Word v : l1) {
    if (s0.count(v) && seen.insert(v).second) ++common;
  }
  return common;
}

bool is_injective(const std::vector<Word>& list) {
  std::unordered_set<Word> seen;
  for (Word v : list) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

bool ed_relation(const EdInstance& inst, std::pair<std::uint64_t, std::uint64_t> w) {
  auto [x, y] = w;
  if (x >= inst.domain || y >= inst.domain || x == y) return false;
  return inst.list[x] == inst.list[y];
}

bool ld_relation(const LdInstance& inst, std::pair<std::uint64_t, std::uint64_t> w) {
  auto [x, y] = w;
  if (x >= inst.domain / 2 || y >= inst.domain / 2) return false;
  return inst.l0[x] == inst.l1[y];
}

std::string EdInstance::to_json(Problem p) const {
  nlohmann::json j;
  j["problem"] = (p == Problem::kEd) ? "ED" : "1ED";
  j["D"] = domain;
  j["R"] = range;
  j["L"] = list;
  return j.dump();
}

std::string LdInstance::to_json() const {
  nlohmann::json j;
  j["problem"] = "1LD";
  j["D"] = domain;
  j["R"] = range;
  j["L0"] = l0;
  j["L1"] = l1;
  return j.dump();
}

LdInstance LdInstance::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LdInstance inst;
  inst.domain = j.at("D").get<std::uint64_t>();
  inst.range = j.at("R").get<std::uint64_t>();
  inst.l0 = j.at("L0").get<std::vector<Word>>();
  inst.l1 = j.at("L1").get<std::vector<Word>>();
  if (inst.l0.size() != inst.domain / 2 || inst.l1.size() != inst.domain / 2) {
    throw std::invalid_argument("instance list sizes do not match D");
  }
  if (!is_injective(inst.l0) || !is_injective(inst.l1)) {
    throw std::invalid_argument("instance lists must be injective");
  }
  inst.cls = count_common_values(inst.l0, inst.l1);
  return inst;
}

namespace {
constexpr std::uint64_t kMaxRejections = 1u << 22;
}

EdInstance gen_ed_instance(Problem p, std::uint64_t domain, std::uint64_t range, int cls, Rng& rng,
                           std::uint64_t* attempts) {
  if (domain > range && cls == 0) throw std::invalid_argument("no collision-free list fits");
  if ((p == Problem::kOneEd && cls > 1) || cls < 0) {
    throw std::invalid_argument("promise class must be 0 or 1");
  }
  EdInstance inst;
  inst.domain = domain;
  inst.range = range;
  std::uint64_t tries = 0;
  for (;;) {
    if (++tries > kMaxRejections) throw std::invalid_argument("infeasible instance parameters");
    inst.list.resize(domain);
    for (auto& v : inst.list) v = static_cast<Word>(rng.next_below(range));
    inst.cls = count_collision_pairs(inst.list);
    if (inst.cls == cls) break;
  }
  if (attempts) *attempts = tries;
  return inst;
}

LdInstance gen_ld_instance(std::uint64_t domain, std::uint64_t range, int cls, Rng& rng,
                           std::uint64_t* attempts) {
  if (domain % 2 != 0) throw std::invalid_argument("1LD domain must be even");
  if (domain / 2 > range) throw std::invalid_argument("lists do not fit the range");
  if (cls != 0 && cls != 1) throw std::invalid_argument("promise class must be 0 or 1");
  LdInstance inst;
  inst.domain = domain;
  inst.range = range;
  std::uint64_t tries = 0;
  for (;;) {
    if (++tries > kMaxRejections) throw std::invalid_argument("infeasible instance parameters");
    inst.l0 = sample_injection(domain / 2, range, rng);
    inst.l1 = sample_injection(domain / 2, range, rng);
    inst.cls = count_common_values(inst.l0, inst.l1);
    if (inst.cls == cls) break;
  }
  if (attempts) *attempts = tries;
  return inst;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search(const EdInstance& inst) {
  std::unordered_map<Word, std::uint64_t> first;
  for (std::uint64_t i = 0; i < inst.list.size(); ++i) {
    auto [it, inserted] = first.try_emplace(inst.list[i], i);
    if (!inserted) return std::make_pair(it->second, i);
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search(const LdInstance& inst) {
  std::unordered_map<Word, std::uint64_t> im0;
  for (std::uint64_t i = 0; i < inst.l0.size(); ++i) im0.emplace(inst.l0[i], i);
  for (std::uint64_t j = 0; j < inst.l1.size(); ++j) {
    if (auto it = im0.find(inst.l1[j]); it != im0.end()) {
      return std::make_pair(it->second, j);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_search_counted(
    const CountedList& l0, const CountedList& l1) {
  std::unordered_map<Word, std::uint64_t> im0;
  for (std::uint64_t i = 0; i < l0.size(); ++i) im0.emplace(l0(i), i);
  for (std::uint64_t j = 0; j < l1.size(); ++j) {
    if (auto it = im0.find(l1(j)); it != im0.end()) {
      return std::make_pair(it->second, j);
    }
  }
  return std::nullopt;
}

int brute_force_decide(const CountedList& l0, const CountedList& l1) {
  std::unordered_set<Word> im0;
  for (std::uint64_t i = 0; i < l0.size(); ++i) im0.insert(l0(i));
  for (std::uint64_t j = 0; j < l1.size(); ++j) {
    if (im0.count(l1(j))) return 1;
  }
  return 0;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> reduce_eds_from_lds(
    const LdSearcher& searcher, const EdInstance& inst, Rng& rng,
    std::shared_ptr<std::uint64_t> counter) {
  if (inst.domain % 2 != 0) throw std::invalid_argument("domain must be even");
  const std::uint64_t half = inst.domain / 2;
  // A random permutation of positions splits the list into two halves.
  std::vector<Word> pos(inst.domain);
  for (std::uint64_t i = 0; i < inst.domain; ++i) pos[i] = static_cast<Word>(i);
  for (std::uint64_t i = inst.domain - 1; i > 0; --i) {
    std::uint64_t j = rng.next_below(i + 1);
    std::swap(pos[i], pos[j]);
  }
  std::vector<Word> l0(half), l1(half);
  for (std::uint64_t i = 0; i < half; ++i) {
    l0[i] = inst.list[pos[i]];
    l1[i] = inst.list[pos[i + half]];
  }
  Rng srng = rng.fork(0x1d5);
  auto w = searcher(CountedList(std::move(l0), counter), CountedList(std::move(l1), counter), srng);
  if (!w) return std::nullopt;
  std::pair<std::uint64_t, std::uint64_t> mapped{pos[w->first], pos[w->second + half]};
  if (!ed_relation(inst, mapped)) return std::nullopt;
  return mapped;
}

std::uint64_t amplify_repetitions(int t, double delta) {
  if (t < 0 || delta <= 0.0) throw std::invalid_argument("need t >= 0 and delta > 0");
  return static_cast<std::uint64_t>(
      std::ceil(4.5 * (t + 1) * std::log(2.0) / (delta * delta)));
}

int amplify_decision(const LdDecider& base, double p0, double delta, int t, const CountedList& l0,
                     const CountedList& l1, Rng& rng) {
  const std::uint64_t n = amplify_repetitions(t, delta);
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Rng copy_rng = rng.fork(i);
    ones += static_cast<std::uint64_t>(base(l0, l1, copy_rng) == 1);
  }
  double p = static_cast<double>(ones) / static_cast<double>(n);
  return p < p0 + delta / 2.0 ? 0 : 1;
}

namespace {

// Index range [lo, hi) into a backing list; the figure's f || g split.
struct Dom {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t size() const { return hi - lo; }
};

// Sublist over `dom` padded back to `full` entries with pad values, merged by
// domain membership: positions inside dom read the real list, the rest read
// the padding.
std::vector<Word> pad_merge(const std::vector<Word>& list, Dom dom, const std::vector<Word>& pad,
                            std::uint64_t full) {
  std::vector<Word> out(full);
  for (std::uint64_t i = 0; i < full; ++i) {
    out[i] = (i >= dom.lo && i < dom.hi) ? list[i] : pad[i];
  }
  return out;
}

}  // namespace

BinarySearchResult binary_search_lds(const LdDecider& decider, const std::vector<Word>& l0,
                                     const std::vector<Word>& l1, std::uint64_t range, Rng& rng) {
  const std::uint64_t half = l0.size();
  if (l1.size() != half || half == 0 || !is_pow2(half)) {
    throw std::invalid_argument("binary search needs equal power-of-two list sizes");
  }
  const std::uint64_t domain = 2 * half;
  if (domain > range) throw std::invalid_argument("range too small for padding");

  BinarySearchResult res;
  auto counter = std::make_shared<std::uint64_t>(0);

  // Fresh injection, halved into the two padding lists.
  std::vector<Word> pad = sample_injection(domain, range, rng);
  std::vector<Word> pad0(pad.begin(), pad.begin() + half);
  std::vector<Word> pad1(pad.begin() + half, pad.end());

  Dom d0{0, half};
  Dom d1{0, half};
  Rng drng = rng.fork(0xb5);
  std::uint64_t round = 0;
  while (d0.size() > 1 || d1.size() > 1) {
    std::uint64_t mid0 = d0.lo + d0.size() / 2;
    std::uint64_t mid1 = d1.lo + d1.size() / 2;
    Dom l0l{d0.lo, mid0}, l0r{mid0, d0.hi};
    Dom l1l{d1.lo, mid1}, l1r{mid1, d1.hi};
    // Default (r, r); test the other three quadrants.
    Dom pick0 = l0r, pick1 = l1r;
    const std::pair<Dom, Dom> quadrants[3] = {{l0l, l1l}, {l0l, l1r}, {l0r, l1l}};
    for (int qi = 0; qi < 3; ++qi) {
      CountedList c0(pad_merge(l0, quadrants[qi].first, pad0, half), counter);
      CountedList c1(pad_merge(l1, quadrants[qi].second, pad1, half), counter);
      Rng call_rng = drng.fork(round * 3 + qi);
      ++res.decider_runs;
      if (decider(c0, c1, call_rng) == 1) {
        pick0 = quadrants[qi].first;
        pick1 = quadrants[qi].second;
      }
    }
    d0 = pick0;
    d1 = pick1;
    ++round;
  }
  res.witness = {d0.lo, d1.lo};
  res.decider_queries = *counter;
  return res;
}

Word DeLdOracles::ic(Word key, Word x) {
  Word v = rho.fwd(key);
  Word top = static_cast<Word>(v >> (key_bits - 1));
  Word j = v & mask_of(key_bits - 1);
  if (top == 0) return f.enc(instance->l0[j], x);
  return pi.fwd(f.dec(instance->l1[j], x));
}

Word DeLdOracles::ic_inv(Word key, Word y) {
  Word v = rho.fwd(key);
  Word top = static_cast<Word>(v >> (key_bits - 1));
  Word j = v & mask_of(key_bits - 1);
  if (top == 0) return f.dec(instance->l0[j], y);
  return f.enc(instance->l1[j], pi.inv(y));
}

DeLdOracles make_de_ld_oracles(const LdInstance& inst, int key_bits, int block_bits, Rng& rng) {
  if (pow2(key_bits) != inst.domain) {
    throw std::invalid_argument("key space must match the list length");
  }
  if (inst.range < pow2(key_bits)) throw std::invalid_argument("range must be at least 2^k");
  DeLdOracles o;
  o.key_bits = key_bits;
  o.block_bits = block_bits;
  o.instance = &inst;
  o.rho = sample_permutation(key_bits, rng);
  o.pi = sample_permutation(block_bits, rng);
  int f_key_bits = bits_for_count(inst.range - 1);
  o.f = sample_ideal_cipher(f_key_bits, block_bits, rng, /*lazy=*/true);
  return o;
}

int de_to_ld_adversary(games::Strategy& sprp_adv, const LdInstance& inst, int key_bits,
                       int block_bits, Rng& rng) {
  DeLdOracles oracles = make_de_ld_oracles(inst, key_bits, block_bits, rng);
  games::View view;
  Rng adv_rng = rng.fork(0xadf);
  const games::QueryBudget budget = sprp_adv.budget();
  std::uint64_t cons = 0, prim = 0;
  for (;;) {
    games::Action a = sprp_adv.next(view, adv_rng);
    if (!a.query) return a.output;
    const games::Query& q = *a.query;
    Word ans = 0;
    switch (q.kind) {
      case games::Query::Kind::kConsFwd:
        if (++cons > budget.construction) throw games::BudgetExceeded("construction budget");
        ans = oracles.cons(q.input);
        break;
      case games::Query::Kind::kConsInv:
        if (++cons > budget.construction) throw games::BudgetExceeded("construction budget");
        ans = oracles.cons_inv(q.input);
        break;
      case games::Query::Kind::kPrimFwd:
        if (++prim > budget.primitive) throw games::BudgetExceeded("primitive budget");
        ans = oracles.ic(q.key, q.input);
        break;
      case games::Query::Kind::kPrimInv:
        if (++prim > budget.primitive) throw games::BudgetExceeded("primitive budget");
        ans = oracles.ic_inv(q.key, q.input);
        break;
    }
    view.transcript.push_back(games::Step{q, ans});
  }
}

}  // namespace kle::listdis
