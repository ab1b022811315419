#include <map>

#include "kle/games.hpp"

namespace kle::games {

namespace {

class ConstantStrategy final : public Strategy {
 public:
  explicit ConstantStrategy(int bit) : bit_(bit) {}
  Action next(const View&, Rng&) override { return Action::finish(bit_); }
  QueryBudget budget() const override { return {}; }
  std::optional<ConsScript> script() const override { return ConsScript{}; }

 private:
  int bit_;
};

class CoinStrategy final : public Strategy {
 public:
  Action next(const View&, Rng& rng) override { return Action::finish(rng.next_bool() ? 1 : 0); }
  QueryBudget budget() const override { return {}; }
  std::optional<ConsScript> script() const override { return ConsScript{}; }
};

class RepeatChecker final : public Strategy {
 public:
  explicit RepeatChecker(Word input) : input_(input) {}
  Action next(const View& view, Rng&) override {
    if (view.transcript.size() < 2) {
      return Action::ask(Query{Query::Kind::kConsFwd, 0, input_});
    }
    return Action::finish(view.transcript[0].answer == view.transcript[1].answer ? 1 : 0);
  }
  QueryBudget budget() const override { return {2, 0}; }
  std::optional<ConsScript> script() const override {
    return ConsScript{{input_, input_}, {}};
  }

 private:
  Word input_;
};

// Shared shape of the "query a script, then test keys via primitive queries"
// distinguishers. Primitive queries are asked once per distinct point and
// replayed from the transcript afterwards.
class KeySearchStrategy : public Strategy {
 public:
  KeySearchStrategy(int key_bits, int block_bits, int points)
      : key_bits_(key_bits), block_bits_(block_bits), points_(points) {}

  Action next(const View& view, Rng& rng) override {
    if (view.transcript.size() < static_cast<std::size_t>(points_)) {
      Word x = static_cast<Word>(view.transcript.size());
      return Action::ask(Query{Query::Kind::kConsFwd, 0, x});
    }
    // Collect construction answers.
    std::vector<std::pair<Word, Word>> pairs;
    for (int i = 0; i < points_; ++i) {
      pairs.emplace_back(static_cast<Word>(i), view.transcript[i].answer);
    }
    // Ask for any primitive value not already in the transcript; otherwise
    // decide from what is known.
    std::map<std::tuple<int, Word, Word>, Word> prim;
    for (std::size_t i = points_; i < view.transcript.size(); ++i) {
      const Step& s = view.transcript[i];
      int dir = s.query.kind == Query::Kind::kPrimInv ? 1 : 0;
      prim[{dir, s.query.key, s.query.input}] = s.answer;
    }
    auto lookup = [&](Query::Kind kind, Word key, Word x) -> std::optional<Word> {
      int dir = kind == Query::Kind::kPrimInv ? 1 : 0;
      auto it = prim.find({dir, key, x});
      if (it == prim.end()) return std::nullopt;
      return it->second;
    };
    std::optional<Query> need;
    bool found = try_decide(pairs, lookup, rng, &need);
    if (need) return Action::ask(*need);
    return Action::finish(found ? 1 : 0);
  }

 protected:
  using PrimLookup = std::function<std::optional<Word>(Query::Kind, Word, Word)>;

  // Returns whether a consistent key exists; sets *need to the next primitive
  // query when more information is required.
  virtual bool try_decide(const std::vector<std::pair<Word, Word>>& pairs, const PrimLookup& prim,
                          Rng& rng, std::optional<Query>* need) = 0;

  int key_bits_;
  int block_bits_;
  int points_;
};

class MitmDeDistinguisher final : public KeySearchStrategy {
 public:
  using KeySearchStrategy::KeySearchStrategy;

  QueryBudget budget() const override {
    return {static_cast<std::uint64_t>(points_),
            pow2(key_bits_) * static_cast<std::uint64_t>(points_) * 2};
  }
  std::optional<ConsScript> script() const override {
    ConsScript s;
    for (int i = 0; i < points_; ++i) s.ev_inputs.push_back(static_cast<Word>(i));
    return s;
  }

 private:
  bool try_decide(const std::vector<std::pair<Word, Word>>& pairs, const PrimLookup& prim, Rng&,
                  std::optional<Query>* need) override {
    // Meet in the middle on the first pair: table of E_{K1}(M_1), probe with
    // E^{-1}_{K2}(C_1), confirm survivors on the remaining pairs.
    std::multimap<Word, Word> mid;  // E_{K1}(M1) -> K1
    for (Word k1 = 0; k1 < pow2(key_bits_); ++k1) {
      auto v = prim(Query::Kind::kPrimFwd, k1, pairs[0].first);
      if (!v) {
        *need = Query{Query::Kind::kPrimFwd, k1, pairs[0].first};
        return false;
      }
      mid.emplace(*v, k1);
    }
    for (Word k2 = 0; k2 < pow2(key_bits_); ++k2) {
      auto v = prim(Query::Kind::kPrimInv, k2, pairs[0].second);
      if (!v) {
        *need = Query{Query::Kind::kPrimInv, k2, pairs[0].second};
        return false;
      }
      auto [lo, hi] = mid.equal_range(*v);
      for (auto it = lo; it != hi; ++it) {
        Word k1 = it->second;
        bool ok = true;
        for (std::size_t i = 1; i < pairs.size() && ok; ++i) {
          auto inner = prim(Query::Kind::kPrimFwd, k1, pairs[i].first);
          if (!inner) {
            *need = Query{Query::Kind::kPrimFwd, k1, pairs[i].first};
            return false;
          }
          auto outer = prim(Query::Kind::kPrimInv, k2, pairs[i].second);
          if (!outer) {
            *need = Query{Query::Kind::kPrimInv, k2, pairs[i].second};
            return false;
          }
          ok = (*inner == *outer);
        }
        if (ok) return true;
      }
    }
    return false;
  }
};

class FfxExhaustiveDistinguisher final : public KeySearchStrategy {
 public:
  using KeySearchStrategy::KeySearchStrategy;

  QueryBudget budget() const override {
    return {static_cast<std::uint64_t>(points_), pow2(key_bits_ + block_bits_)};
  }
  std::optional<ConsScript> script() const override {
    ConsScript s;
    for (int i = 0; i < points_; ++i) s.ev_inputs.push_back(static_cast<Word>(i));
    return s;
  }

 private:
  bool try_decide(const std::vector<std::pair<Word, Word>>& pairs, const PrimLookup& prim, Rng&,
                  std::optional<Query>* need) override {
    for (Word k1 = 0; k1 < pow2(key_bits_); ++k1) {
      for (Word k2 = 0; k2 < pow2(block_bits_); ++k2) {
        bool ok = true;
        for (const auto& [m, c] : pairs) {
          auto v = prim(Query::Kind::kPrimFwd, k1, m ^ k2);
          if (!v) {
            *need = Query{Query::Kind::kPrimFwd, k1, m ^ k2};
            return false;
          }
          if (*v != c) {
            ok = false;
            break;
          }
        }
        if (ok) return true;
      }
    }
    return false;
  }
};

// Tests `guesses` seeded-random (K1, K2) candidates against the scripted
// pairs; the per-trial rng fixes the candidate list before any answer is seen.
class FxPartialSearch final : public KeySearchStrategy {
 public:
  FxPartialSearch(int key_bits, int block_bits, int points, std::uint64_t guesses, bool prf_mode)
      : KeySearchStrategy(key_bits, block_bits, points), guesses_(guesses), prf_mode_(prf_mode) {}

  QueryBudget budget() const override {
    return {static_cast<std::uint64_t>(points_), guesses_ * static_cast<std::uint64_t>(points_)};
  }
  std::optional<ConsScript> script() const override {
    ConsScript s;
    for (int i = 0; i < points_; ++i) s.ev_inputs.push_back(static_cast<Word>(i));
    return s;
  }

 private:
  bool try_decide(const std::vector<std::pair<Word, Word>>& pairs, const PrimLookup& prim,
                  Rng& rng, std::optional<Query>* need) override {
    Rng guess_rng = rng.fork(0x90e55);
    for (std::uint64_t g = 0; g < guesses_; ++g) {
      Word k1 = static_cast<Word>(guess_rng.next_below(pow2(key_bits_)));
      Word k2 = static_cast<Word>(guess_rng.next_below(pow2(block_bits_)));
      bool ok = true;
      for (const auto& [m, c] : pairs) {
        auto v = prim(Query::Kind::kPrimFwd, k1, m ^ k2);
        if (!v) {
          *need = Query{Query::Kind::kPrimFwd, k1, m ^ k2};
          return false;
        }
        Word predicted = prf_mode_ ? *v : (*v ^ k2);
        if (predicted != c) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  std::uint64_t guesses_;
  bool prf_mode_;
};

}  // namespace

std::unique_ptr<Strategy> make_constant(int bit) { return std::make_unique<ConstantStrategy>(bit); }

std::unique_ptr<Strategy> make_coin() { return std::make_unique<CoinStrategy>(); }

std::unique_ptr<Strategy> make_repeat_checker(Word input) {
  return std::make_unique<RepeatChecker>(input);
}

std::unique_ptr<Strategy> make_mitm_de_distinguisher(int key_bits, int block_bits, int pairs) {
  return std::make_unique<MitmDeDistinguisher>(key_bits, block_bits, pairs);
}

std::unique_ptr<Strategy> make_ffx_exhaustive_distinguisher(int key_bits, int in_bits,
                                                            int points) {
  return std::make_unique<FfxExhaustiveDistinguisher>(key_bits, in_bits, points);
}

std::unique_ptr<Strategy> make_fx_partial_search(int key_bits, int block_bits, int script_points,
                                                 std::uint64_t guesses) {
  return std::make_unique<FxPartialSearch>(key_bits, block_bits, script_points, guesses,
                                           /*prf_mode=*/false);
}

std::unique_ptr<Strategy> make_ffx_partial_search(int key_bits, int in_bits, int script_points,
                                                  std::uint64_t guesses) {
  return std::make_unique<FxPartialSearch>(key_bits, in_bits, script_points, guesses,
                                           /*prf_mode=*/true);
}

}  // namespace kle::games
