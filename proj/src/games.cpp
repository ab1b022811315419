#include "kle/games.hpp"

#include <atomic>
#include <thread>

#include "kle/constructions.hpp"
#include "kle/stats.hpp"

namespace kle::games {

namespace {

struct SprpWorld {
  IdealCipher primitive;   // the ideal cipher E (or single permutation for EM)
  IdealCipher ideal_perm;  // world-0 construction oracle
  FxKey fx_key;
  DeKey de_key;
  Word em_key = 0;
};

class SprpRunner {
 public:
  SprpRunner(const SprpParams& params, int world, Rng& rng) : params_(params), world_(world) {
    Rng sample_rng = rng.fork(0x5a5a);
    w_.primitive = sample_ideal_cipher(params.key_bits, params.block_bits, sample_rng,
                                       /*lazy=*/true);
    w_.ideal_perm = sample_ideal_cipher(0, params.block_bits, sample_rng, /*lazy=*/true);
    switch (params.kind) {
      case ConstructionKind::kFx:
        w_.fx_key.k1 = static_cast<Word>(sample_rng.next_below(pow2(params.key_bits)));
        w_.fx_key.k2 = static_cast<Word>(sample_rng.next_below(pow2(params.block_bits)));
        break;
      case ConstructionKind::kDe:
        w_.de_key.k1 = static_cast<Word>(sample_rng.next_below(pow2(params.key_bits)));
        w_.de_key.k2 = static_cast<Word>(sample_rng.next_below(pow2(params.key_bits)));
        break;
      case ConstructionKind::kEm:
        if (params.key_bits != 0) throw std::invalid_argument("EM uses key_bits = 0");
        w_.em_key = static_cast<Word>(sample_rng.next_below(pow2(params.block_bits)));
        break;
    }
  }

  Word answer(const Query& q) {
    switch (q.kind) {
      case Query::Kind::kConsFwd:
        return world_ == 1 ? cons_fwd(q.input) : w_.ideal_perm.enc(0, q.input);
      case Query::Kind::kConsInv:
        return world_ == 1 ? cons_inv(q.input) : w_.ideal_perm.dec(0, q.input);
      case Query::Kind::kPrimFwd:
        return w_.primitive.enc(q.key, q.input);
      case Query::Kind::kPrimInv:
        return w_.primitive.dec(q.key, q.input);
    }
    throw std::logic_error("unreachable");
  }

 private:
  Word cons_fwd(Word x) {
    switch (params_.kind) {
      case ConstructionKind::kFx:
        return fx_enc(w_.primitive, w_.fx_key, x);
      case ConstructionKind::kDe:
        return de_enc(w_.primitive, w_.de_key, x);
      case ConstructionKind::kEm:
        return w_.primitive.enc(0, x ^ w_.em_key) ^ w_.em_key;
    }
    throw std::logic_error("unreachable");
  }

  Word cons_inv(Word y) {
    switch (params_.kind) {
      case ConstructionKind::kFx:
        return fx_dec(w_.primitive, w_.fx_key, y);
      case ConstructionKind::kDe:
        return de_dec(w_.primitive, w_.de_key, y);
      case ConstructionKind::kEm:
        return w_.primitive.dec(0, y ^ w_.em_key) ^ w_.em_key;
    }
    throw std::logic_error("unreachable");
  }

  SprpParams params_;
  int world_;
  SprpWorld w_;
};

void enforce_script(const std::optional<ConsScript>& script, const Query& q,
                    std::size_t cons_queries_so_far) {
  if (!script) return;
  const auto& s = *script;
  if (cons_queries_so_far >= s.total()) {
    throw std::invalid_argument("non-adaptive adversary exceeded its script");
  }
  if (cons_queries_so_far < s.ev_inputs.size()) {
    if (q.kind != Query::Kind::kConsFwd || q.input != s.ev_inputs[cons_queries_so_far]) {
      throw std::invalid_argument("non-adaptive adversary deviated from script");
    }
  } else {
    std::size_t i = cons_queries_so_far - s.ev_inputs.size();
    if (q.kind != Query::Kind::kConsInv || q.input != s.inv_inputs[i]) {
      throw std::invalid_argument("non-adaptive adversary deviated from script");
    }
  }
}

template <typename AnswerFn>
int drive(Strategy& adv, Rng& rng, const AnswerFn& answer_query) {
  View view;
  const QueryBudget budget = adv.budget();
  const auto script = adv.script();
  std::uint64_t cons = 0;
  std::uint64_t prim = 0;
  Rng adv_rng = rng.fork(0xadf);
  for (;;) {
    Action a = adv.next(view, adv_rng);
    if (!a.query) return a.output;
    const Query& q = *a.query;
    bool is_cons = q.kind == Query::Kind::kConsFwd || q.kind == Query::Kind::kConsInv;
    if (is_cons) {
      enforce_script(script, q, cons);
      if (++cons > budget.construction) throw BudgetExceeded("construction budget exceeded");
    } else {
      if (++prim > budget.primitive) throw BudgetExceeded("primitive budget exceeded");
    }
    view.transcript.push_back(Step{q, answer_query(q)});
  }
}

}  // namespace

int run_sprp_game(const SprpParams& params, Strategy& adv, int world, Rng& rng) {
  SprpRunner runner(params, world, rng);
  return drive(adv, rng, [&](const Query& q) { return runner.answer(q); });
}

int run_prf_game(const PrfParams& params, Strategy& adv, int world, Rng& rng) {
  Rng sample_rng = rng.fork(0x5a5a);
  RandomFunction h =
      sample_random_function(params.key_bits, params.in_bits, params.out_bits, sample_rng,
                             /*lazy=*/true);
  RandomFunction ideal = sample_random_function(0, params.in_bits, params.out_bits, sample_rng,
                                                /*lazy=*/true);
  FfxKey key;
  key.k1 = static_cast<Word>(sample_rng.next_below(pow2(params.key_bits)));
  key.k2 = static_cast<Word>(sample_rng.next_below(pow2(params.in_bits)));
  return drive(adv, rng, [&](const Query& q) -> Word {
    switch (q.kind) {
      case Query::Kind::kConsFwd:
        return world == 1 ? ffx_eval(h, key, q.input) : ideal.eval(0, q.input);
      case Query::Kind::kPrimFwd:
        return h.eval(q.key, q.input);
      default:
        throw std::invalid_argument("prf game has no inverse oracles");
    }
  });
}

AdvantageEstimate estimate_advantage(const GameFn& game, Strategy& adv, std::uint64_t trials,
                                     double fail_prob, const Rng& rng, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads < 1) threads = 1;

  std::atomic<std::uint64_t> real_ones{0};
  std::atomic<std::uint64_t> ideal_ones{0};
  std::atomic<std::uint64_t> aborted{0};

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local_real = 0;
    std::uint64_t local_ideal = 0;
    std::uint64_t local_abort = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng trial = rng.fork(t);
      try {
        Rng r1 = trial.fork(1);
        local_real += static_cast<std::uint64_t>(game(adv, 1, r1) == 1);
        Rng r0 = trial.fork(0);
        local_ideal += static_cast<std::uint64_t>(game(adv, 0, r0) == 1);
      } catch (const BudgetExceeded&) {
        ++local_abort;
      }
    }
    real_ones += local_real;
    ideal_ones += local_ideal;
    aborted += local_abort;
  };

  if (threads == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (trials + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      std::uint64_t lo = i * chunk;
      std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  AdvantageEstimate est;
  est.trials = trials;
  est.seed = rng.seed();
  est.aborted = aborted.load();
  std::uint64_t effective = trials - est.aborted;
  if (effective == 0) {
    // Every trial violated a budget; nothing to estimate.
    est.ci_half_width = 1.0;
    return est;
  }
  est.p_real = static_cast<double>(real_ones.load()) / static_cast<double>(effective);
  est.p_ideal = static_cast<double>(ideal_ones.load()) / static_cast<double>(effective);
  est.advantage = est.p_real - est.p_ideal;
  est.ci_half_width = hoeffding_half_width(effective, fail_prob);
  return est;
}

bool run_o2h_guess_game(const O2hPairSpec& spec, const O2hStrategy& adv, std::uint64_t max_queries,
                        Rng& rng) {
  if (max_queries < 1) throw std::invalid_argument("guess game needs q >= 1");
  std::uint64_t halt_at = 1 + rng.next_below(max_queries);
  Rng adv_rng = rng.fork(0xadf);
  std::vector<std::uint64_t> answers;
  for (std::uint64_t i = 1; i <= max_queries; ++i) {
    auto q = adv(answers, adv_rng);
    if (!q) return false;  // adversary halted before the measured query
    if (i == halt_at) {
      return q->oracle == 0 ? spec.in_s(q->input) : spec.in_s_prime(q->input);
    }
    answers.push_back(q->oracle == 0 ? spec.p0(q->input) : spec.p0_prime(q->input));
  }
  return false;
}

}  // namespace kle::games
