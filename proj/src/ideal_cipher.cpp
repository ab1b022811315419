#include "kle/ideal_cipher.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kle {

namespace {

void check_params(int key_bits, int block_bits) {
  if (key_bits < 0 || key_bits > 24) throw std::invalid_argument("key_bits out of range");
  if (block_bits < 1 || block_bits > 20) throw std::invalid_argument("block_bits out of range");
}

}  // namespace

IdealCipher sample_ideal_cipher(int key_bits, int block_bits, Rng& rng, bool lazy) {
  check_params(key_bits, block_bits);
  IdealCipher e;
  e.key_bits_ = key_bits;
  e.block_bits_ = block_bits;
  e.lazy_ = lazy;
  if (lazy) {
    // Consume entropy so repeated samplings from one parent are independent.
    e.rng_ = Rng(rng.next_u64(), rng.next_u64());
  } else {
    if (key_bits + block_bits > 20) {
      throw std::invalid_argument("full-table cipher needs key_bits + block_bits <= 20");
    }
    e.tables_.reserve(pow2(key_bits));
    for (std::uint64_t k = 0; k < pow2(key_bits); ++k) {
      e.tables_.push_back(sample_permutation(block_bits, rng));
    }
  }
  return e;
}

IdealCipher ideal_cipher_from_tables(int key_bits, int block_bits,
                                     std::vector<std::vector<Word>> tables) {
  check_params(key_bits, block_bits);
  if (tables.size() != pow2(key_bits)) throw std::invalid_argument("need one table per key");
  IdealCipher e;
  e.key_bits_ = key_bits;
  e.block_bits_ = block_bits;
  e.lazy_ = false;
  e.tables_.reserve(tables.size());
  for (auto& t : tables) e.tables_.push_back(Permutation::from_table(block_bits, std::move(t)));
  return e;
}

IdealCipher::LazyKeyState& IdealCipher::lazy_state(Word key) {
  auto [it, inserted] = per_key_.try_emplace(key);
  if (inserted) {
    const std::size_t n = pow2(block_bits_);
    it->second.unused_outputs.resize(n);
    it->second.unused_inputs.resize(n);
    std::iota(it->second.unused_outputs.begin(), it->second.unused_outputs.end(), 0);
    std::iota(it->second.unused_inputs.begin(), it->second.unused_inputs.end(), 0);
  }
  return it->second;
}

void IdealCipher::bind(LazyKeyState& st, Word x, Word y) {
  // A point may be bound only once in each direction; this is what keeps the
  // partial map injective across any interleaving of forward/inverse queries.
  assert(!st.fwd.count(x) && !st.bwd.count(y));
  st.fwd.emplace(x, y);
  st.bwd.emplace(y, x);
  auto drop = [](std::vector<Word>& pool, Word v) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i] == v) {
        pool[i] = pool.back();
        pool.pop_back();
        return;
      }
    }
    assert(false && "value missing from pool");
  };
  drop(st.unused_outputs, y);
  drop(st.unused_inputs, x);
}

Word IdealCipher::enc(Word key, Word x) {
  if (key >= pow2(key_bits_) || x >= pow2(block_bits_)) {
    throw std::invalid_argument("enc operand out of range");
  }
  if (!lazy_) return tables_[key].fwd(x);
  LazyKeyState& st = lazy_state(key);
  if (auto it = st.fwd.find(x); it != st.fwd.end()) return it->second;
  Word y = st.unused_outputs[rng_.next_below(st.unused_outputs.size())];
  bind(st, x, y);
  return y;
}

Word IdealCipher::dec(Word key, Word y) {
  if (key >= pow2(key_bits_) || y >= pow2(block_bits_)) {
    throw std::invalid_argument("dec operand out of range");
  }
  if (!lazy_) return tables_[key].inv(y);
  LazyKeyState& st = lazy_state(key);
  if (auto it = st.bwd.find(y); it != st.bwd.end()) return it->second;
  Word x = st.unused_inputs[rng_.next_below(st.unused_inputs.size())];
  bind(st, x, y);
  return x;
}

const Permutation& IdealCipher::perm(Word key) const {
  if (lazy_) throw std::logic_error("perm() requires full-table mode");
  return tables_.at(key);
}

std::string IdealCipher::to_json() const {
  if (lazy_) throw std::logic_error("to_json() requires full-table mode");
  nlohmann::json j;
  j["key_bits"] = key_bits_;
  j["block_bits"] = block_bits_;
  auto& arr = j["tables"] = nlohmann::json::array();
  for (const auto& p : tables_) arr.push_back(p.table());
  return j.dump();
}

RandomFunction sample_random_function(int key_bits, int in_bits, int out_bits, Rng& rng,
                                      bool lazy) {
  if (key_bits < 0 || in_bits < 0 || out_bits < 1 || out_bits > 24) {
    throw std::invalid_argument("random function shape out of range");
  }
  RandomFunction f;
  f.key_bits_ = key_bits;
  f.in_bits_ = in_bits;
  f.out_bits_ = out_bits;
  f.lazy_ = lazy || key_bits + in_bits > 20;
  if (f.lazy_) {
    f.rng_ = Rng(rng.next_u64(), rng.next_u64());
  } else {
    f.table_.resize(pow2(key_bits + in_bits));
    for (auto& v : f.table_) v = static_cast<Word>(rng.next_below(pow2(out_bits)));
  }
  return f;
}

RandomFunction random_function_from_table(int key_bits, int in_bits, int out_bits,
                                          std::vector<Word> table) {
  if (table.size() != pow2(key_bits + in_bits)) throw std::invalid_argument("table size mismatch");
  RandomFunction f;
  f.key_bits_ = key_bits;
  f.in_bits_ = in_bits;
  f.out_bits_ = out_bits;
  f.lazy_ = false;
  f.table_ = std::move(table);
  return f;
}

Word RandomFunction::eval(Word key, Word x) {
  if (key >= pow2(key_bits_) || x >= pow2(in_bits_)) {
    throw std::invalid_argument("eval operand out of range");
  }
  if (!lazy_) return table_[(static_cast<std::uint64_t>(key) << in_bits_) | x];
  std::uint64_t idx = (static_cast<std::uint64_t>(key) << in_bits_) | x;
  auto [it, inserted] = map_.try_emplace(idx, 0);
  if (inserted) it->second = static_cast<Word>(rng_.next_below(pow2(out_bits_)));
  return it->second;
}

std::string RandomFunction::to_json() const {
  if (lazy_) throw std::logic_error("to_json() requires full-table mode");
  nlohmann::json j;
  j["width"] = in_bits_;  // table index is (key << width) | x
  j["key_bits"] = key_bits_;
  j["out_bits"] = out_bits_;
  j["table"] = table_;
  return j.dump();
}

}  // namespace kle
