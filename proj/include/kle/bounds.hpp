#pragma once

#include <map>
#include <optional>
#include <string>

namespace kle::bounds {

// Advantage-bound formulas, one identifier per bound the analyses produce.
//   fx_na        sqrt(8 p^2 q / 2^(k+n))
//   ffx          sqrt(8 (p+q) p q / 2^(k+n))
//   de           11 * ((q k lg k)^3 / 2^(2k))^(1/6) + 2^-k
//   de_red       adv + 2^-k
//   ld           11 * ((q lg D lglg D)^3 / D^2)^(1/6)      [D >= 32, power of 2]
//   eds          9 (q+2)^3 / D^2
//   lds          2 * adv
//   ldd          1 - D^2/R - 1.5 (lg D - 2)(1 - adv)       [success lower bound]
//   amp          1 - 2/2^t, with query cost q * ceil(4.5 (t+1) ln2 / delta^2)
//   o2h          2 q sqrt(guess)
//   kr_classical p q / 2^(k+n-1)
//
// lg is log base 2 throughout. Values are computed in log domain where the
// inputs can be astronomically large, never clamped to [0,1]; vacuous flags
// value >= 1.
enum class Formula {
  kFxNa,
  kFfx,
  kDe,
  kDeRed,
  kLd,
  kEds,
  kLds,
  kLdd,
  kAmp,
  kO2h,
  kKrClassical,
};

Formula formula_from_name(const std::string& name);
std::string formula_name(Formula f);

// Inputs by symbol name: k, n, p, q, D, R, t, delta, adv, guess (those a
// formula uses). Query counts may exceed 2^64 and are carried as doubles.
using Inputs = std::map<std::string, double>;

struct BoundResult {
  Formula formula = Formula::kFxNa;
  Inputs inputs;
  double value = 0.0;
  bool vacuous = false;
  // Formula-specific derived quantities (amp: the repetition count and query
  // cost).
  std::map<std::string, double> derived;

  std::string to_json() const;
};

// Exact formula value; throws std::domain_error on domain violations
// (negative inputs, D not a power of two >= 32 for ld, lg lg undefined).
BoundResult eval_bound(Formula f, const Inputs& inputs);

// Minimal value of `free_input` for which the formula reaches `target`.
// Exact integer binary search while the answer fits 2^53; log-domain
// bisection above that. Throws std::domain_error if the target is
// unreachable. Formula must be nondecreasing in the free input.
double invert_bound(Formula f, double target, const Inputs& fixed, const std::string& free_input);

}  // namespace kle::bounds
