#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kle/bits.hpp"
#include "kle/ideal_cipher.hpp"
#include "kle/rng.hpp"

namespace kle::games {

// ---------------------------------------------------------------------------
// Adversaries
// ---------------------------------------------------------------------------

struct Query {
  enum class Kind { kConsFwd, kConsInv, kPrimFwd, kPrimInv };
  Kind kind = Kind::kConsFwd;
  Word key = 0;  // primitive queries only
  Word input = 0;
};

struct Step {
  Query query;
  Word answer = 0;
};

// Everything an adversary has seen so far.
struct View {
  std::vector<Step> transcript;
};

struct Action {
  // Either a query or a final output bit.
  std::optional<Query> query;
  int output = 0;

  static Action ask(Query q) { return Action{q, 0}; }
  static Action finish(int bit) { return Action{std::nullopt, bit}; }
};

struct QueryBudget {
  std::uint64_t construction = 0;
  std::uint64_t primitive = 0;
};

// Non-adaptive construction-query script: forward inputs first, then inverse
// inputs, all fixed before execution.
struct ConsScript {
  std::vector<Word> ev_inputs;
  std::vector<Word> inv_inputs;
  std::size_t total() const { return ev_inputs.size() + inv_inputs.size(); }
};

// A strategy is a pure transition function from view to next action; any
// randomness it needs comes from the per-trial rng, so a single instance can
// be replayed across trials and worlds.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Action next(const View& view, Rng& rng) = 0;
  virtual QueryBudget budget() const = 0;
  // Present iff the strategy is non-adaptive in its construction queries.
  virtual std::optional<ConsScript> script() const { return std::nullopt; }
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Games
// ---------------------------------------------------------------------------

enum class ConstructionKind { kFx, kDe, kEm };

struct SprpParams {
  ConstructionKind kind = ConstructionKind::kFx;
  int key_bits = 0;    // 0 for EM
  int block_bits = 0;
};

struct PrfParams {
  int key_bits = 0;
  int in_bits = 0;
  int out_bits = 0;
};

// One run of the SPRP game. world = 1: construction keyed at random over a
// fresh ideal cipher. world = 0: an independent random permutation answers
// construction queries while the same ideal cipher answers primitive queries.
// Throws BudgetExceeded if the adversary oversteps its declared budgets, and
// std::invalid_argument if a scripted adversary deviates from its script.
int run_sprp_game(const SprpParams& params, Strategy& adv, int world, Rng& rng);

// PRF game for the FFX construction over a random function family.
int run_prf_game(const PrfParams& params, Strategy& adv, int world, Rng& rng);

struct AdvantageEstimate {
  double p_real = 0.0;
  double p_ideal = 0.0;
  double advantage = 0.0;
  double ci_half_width = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t aborted = 0;  // budget-violation trials, excluded and flagged
};

using GameFn = std::function<int(Strategy&, int world, Rng&)>;

// Monte Carlo advantage with Hoeffding confidence half-width. Deterministic
// given rng's (seed, stream); trials can run on several threads without
// changing the result.
AdvantageEstimate estimate_advantage(const GameFn& game, Strategy& adv, std::uint64_t trials,
                                     double fail_prob, const Rng& rng, int threads = 1);

// ---------------------------------------------------------------------------
// Classical O2H guess game
// ---------------------------------------------------------------------------

// Oracle pair (P0, P0') with marked input sets S, S' over plain integer
// domains. The runner halts the adversary at a uniformly chosen query index
// and reports membership of that query.
struct O2hPairSpec {
  std::uint64_t domain0 = 0;   // inputs to P0 live in [0, domain0)
  std::uint64_t domain1 = 0;
  std::function<std::uint64_t(std::uint64_t)> p0;
  std::function<std::uint64_t(std::uint64_t)> p0_prime;
  std::function<bool(std::uint64_t)> in_s;
  std::function<bool(std::uint64_t)> in_s_prime;
};

struct O2hQuery {
  int oracle = 0;  // 0 -> P0, 1 -> P0'
  std::uint64_t input = 0;
};

// Classical strategy for the guess game: returns queries until done.
using O2hStrategy = std::function<std::optional<O2hQuery>(const std::vector<std::uint64_t>& answers,
                                                          Rng& rng)>;

bool run_o2h_guess_game(const O2hPairSpec& spec, const O2hStrategy& adv, std::uint64_t max_queries,
                        Rng& rng);

// ---------------------------------------------------------------------------
// Built-in strategies
// ---------------------------------------------------------------------------

// Always outputs the given bit, no queries.
std::unique_ptr<Strategy> make_constant(int bit);

// Outputs a fresh coin, no queries.
std::unique_ptr<Strategy> make_coin();

// Queries Ev on fixed inputs twice each and outputs 1 iff answers repeat
// consistently (sanity adversary).
std::unique_ptr<Strategy> make_repeat_checker(Word input);

// Meet-in-the-middle DE distinguisher: asks Ev on `pairs` fixed points, then
// searches all key pairs through primitive queries (deduplicated), outputs 1
// iff some (K1, K2) explains every pair.
std::unique_ptr<Strategy> make_mitm_de_distinguisher(int key_bits, int block_bits, int pairs);

// Exhaustive-key FFX distinguisher: asks Ev on `points` fixed inputs and
// checks all (K1, K2) against primitive queries H(K1, x ^ K2).
std::unique_ptr<Strategy> make_ffx_exhaustive_distinguisher(int key_bits, int in_bits, int points);

// Non-adaptive FX distinguisher with a limited primitive budget: queries Ev
// on a fixed script, then tests `guesses` random (K1, K2) candidates; outputs
// 1 iff one is consistent with every scripted pair.
std::unique_ptr<Strategy> make_fx_partial_search(int key_bits, int block_bits, int script_points,
                                                 std::uint64_t guesses);

// Same idea against FFX in the PRF game.
std::unique_ptr<Strategy> make_ffx_partial_search(int key_bits, int in_bits, int script_points,
                                                  std::uint64_t guesses);

}  // namespace kle::games
