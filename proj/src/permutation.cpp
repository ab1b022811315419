#include "kle/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace kle {

namespace {

void check_width(int width) {
  if (width < 1 || width > 20) {
    throw std::invalid_argument("permutation width must be in [1, 20]");
  }
}

}  // namespace

Permutation Permutation::identity(int width) {
  check_width(width);
  std::vector<Word> t(pow2(width));
  std::iota(t.begin(), t.end(), 0);
  return from_table(width, std::move(t));
}

Permutation Permutation::from_table(int width, std::vector<Word> table) {
  check_width(width);
  const std::size_t n = pow2(width);
  if (table.size() != n) throw std::invalid_argument("table size does not match width");
  Permutation p;
  p.width_ = width;
  p.inv_table_.assign(n, Word{0});
  std::vector<bool> seen(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    Word y = table[x];
    if (y >= n || seen[y]) throw std::invalid_argument("table is not a bijection");
    seen[y] = true;
    p.inv_table_[y] = static_cast<Word>(x);
  }
  p.table_ = std::move(table);
  return p;
}

std::string Permutation::to_json() const {
  nlohmann::json j;
  j["width"] = width_;
  j["table"] = table_;
  return j.dump();
}

Permutation Permutation::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return from_table(j.at("width").get<int>(), j.at("table").get<std::vector<Word>>());
}

Permutation sample_permutation(int width, Rng& rng) {
  check_width(width);
  const std::size_t n = pow2(width);
  std::vector<Word> t(n);
  std::iota(t.begin(), t.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = rng.next_below(i + 1);
    std::swap(t[i], t[j]);
  }
  return Permutation::from_table(width, std::move(t));
}

std::vector<Word> sample_injection(std::uint64_t domain, std::uint64_t range, Rng& rng) {
  if (domain > range) throw std::invalid_argument("injection needs domain <= range");
  // Partial Fisher-Yates over [0, range) with a sparse displacement map.
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  std::vector<Word> out(domain);
  for (std::uint64_t i = 0; i < domain; ++i) {
    std::uint64_t j = i + rng.next_below(range - i);
    auto it = moved.find(j);
    std::uint64_t value = (it == moved.end()) ? j : it->second;
    auto self = moved.find(i);
    moved[j] = (self == moved.end()) ? i : self->second;
    out[i] = static_cast<Word>(value);
  }
  return out;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t permutation_rank(const std::vector<Word>& table) {
  const std::size_t n = table.size();
  if (n > 20) throw std::invalid_argument("rank supported for tables of up to 20 entries");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (table[j] < table[i]) ++smaller;
    }
    rank += smaller * factorial(static_cast<unsigned>(n - 1 - i));
  }
  return rank;
}

}  // namespace kle
