#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kle/bits.hpp"
#include "kle/qsim.hpp"
#include "kle/rng.hpp"

namespace kle::hybrids {

// ---------------------------------------------------------------------------
// Adversary circuits
// ---------------------------------------------------------------------------

enum class GateKind { kH, kX, kCnot, kToffoli, kCz };

struct CircuitOp {
  enum class Kind { kGate, kCallEv, kCallRo };
  Kind kind = Kind::kGate;
  GateKind gate = GateKind::kH;
  // Qubit indices into the adversary-visible block, which always packs
  // W (1 qubit), K (k), X (n), Y (m) in that order from qubit 0.
  std::vector<int> targets;

  static CircuitOp gate_op(GateKind g, std::vector<int> t) {
    return CircuitOp{Kind::kGate, g, std::move(t)};
  }
  static CircuitOp ev() { return CircuitOp{Kind::kCallEv, GateKind::kH, {}}; }
  static CircuitOp ro() { return CircuitOp{Kind::kCallRo, GateKind::kH, {}}; }
};

// A fixed list of gates and oracle calls; the output is read from W[1].
// The call sequence fixes the per-run budgets: q = #ev, p = #ro, and the
// order of oracle calls is a priori fixed by the list.
struct AdversaryCircuit {
  std::vector<CircuitOp> ops;

  int ev_calls() const;
  int ro_calls() const;

  std::string to_json() const;
  static AdversaryCircuit from_json(const std::string& text);
};

// Seeded circuit over the visible block with the required number of oracle
// calls mixed into `gates` random gates.
AdversaryCircuit random_circuit(int k, int n, int m, int ev_calls, int ro_calls, int gates,
                                Rng& rng);

// ---------------------------------------------------------------------------
// Hybrid games
// ---------------------------------------------------------------------------

struct HybridParams {
  int k = 1;
  int n = 1;
  int m = 1;
};

// H0..H3 rewrite the ideal world (random oracle H plus an independent random
// function behind Ev) into Fourier-basis tables; H9..H4 do the same for the
// real world; T3/T4 are H3/H4 with the post-run operations stripped, whose
// oracles are identical until a bad input.
enum class HybridId { kH0, kH1, kH2, kH3, kH4, kH5, kH6, kH7, kH8, kH9, kT3, kT4 };

HybridId hybrid_from_name(const std::string& name);
std::string hybrid_name(HybridId id);

// Exact Pr[W[1] = 1] for the hybrid. Games with classical draws (H0, H9)
// are averaged by exhaustive enumeration when the draw space has at most
// 2^20 points, otherwise by mc_trials Monte Carlo draws from rng.
double run_hybrid(HybridId id, const AdversaryCircuit& adv, const HybridParams& params, Rng& rng,
                  std::uint64_t mc_trials = 4096);

// Reversible classical maps over the full register set, exposed for direct
// inspection. kEv/kRo are the plain xor-into-Y oracles reading F / H; kFEv /
// kFRo their Fourier versions writing into the tables; kEvReal / kFEvReal the
// real-world variants reading H at (K1, X ^ K2); kFEvBad / kFRoBad the
// identical-until-bad variants; kSwapT the swap unitary.
enum class OracleKind { kEv, kRo, kFEv, kFRo, kEvReal, kFEvReal, kFEvBad, kFRoBad, kSwapT };

OracleKind oracle_from_name(const std::string& name);

// Layout with every register present: (W, K, X, Y, H, F, K1, K2, I, Xv),
// little-endian, I and Xv sized for ev_calls.
qsim::RegisterLayout full_layout(const HybridParams& params, int ev_calls);

// The returned map reads field offsets from `layout`, which must outlive it.
std::function<qsim::BasisIndex(qsim::BasisIndex)> build_oracle(OracleKind kind,
                                                               const HybridParams& params,
                                                               const qsim::RegisterLayout& layout);

struct ClaimResult {
  std::vector<double> probs;
  double max_deviation = 0.0;
};

// The ideal-world chain must agree: Pr[H0] = Pr[H1] = Pr[H2] = Pr[H3].
ClaimResult check_claim1(const AdversaryCircuit& adv, const HybridParams& params);

// The real-world chain must agree: Pr[H9] = ... = Pr[H4].
ClaimResult check_claim2(const AdversaryCircuit& adv, const HybridParams& params);

struct Claim3Result {
  double prob_t3 = 0.0;
  double prob_t4 = 0.0;
  double delta = 0.0;        // |Pr[T3] - Pr[T4]|
  double bound = 0.0;        // 2 (p+q) sqrt(2 p q / 2^(k+n))
  double guess = 0.0;        // measured guess-game probability
  double o2h_bound = 0.0;    // 2 (p+q) sqrt(guess)
};

// The identical-until-bad gap plus the one-way-to-hiding cross-check.
Claim3Result check_claim3(const AdversaryCircuit& adv, const HybridParams& params);

// Quantum guess game over the identical-until-bad oracle pair: for each query
// index j the T3 run is truncated right before its j-th oracle call and the
// exact probability mass of the bad set for that call's oracle is taken;
// the result averages over j uniform.
double run_quantum_guess_game(const AdversaryCircuit& adv, const HybridParams& params);

// The per-query-index bad-set masses the guess game averages.
std::vector<double> guess_game_masses(const AdversaryCircuit& adv, const HybridParams& params);

}  // namespace kle::hybrids
