#include "kle/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kle::bounds {

namespace {

double get(const Inputs& in, const std::string& name) {
  auto it = in.find(name);
  if (it == in.end()) throw std::domain_error("missing input: " + name);
  if (!(it->second >= 0.0) || std::isnan(it->second)) {
    throw std::domain_error("inputs must be nonnegative: " + name);
  }
  return it->second;
}

double lg(double x) { return std::log2(x); }

// exp2 of a log2-domain value, saturating instead of overflowing.
double from_log2(double e) {
  if (e > 1020.0) return std::numeric_limits<double>::infinity();
  return std::exp2(e);
}

}  // namespace

Formula formula_from_name(const std::string& name) {
  if (name == "fx_na") return Formula::kFxNa;
  if (name == "ffx") return Formula::kFfx;
  if (name == "de") return Formula::kDe;
  if (name == "de_red") return Formula::kDeRed;
  if (name == "ld") return Formula::kLd;
  if (name == "eds") return Formula::kEds;
  if (name == "lds") return Formula::kLds;
  if (name == "ldd") return Formula::kLdd;
  if (name == "amp") return Formula::kAmp;
  if (name == "o2h") return Formula::kO2h;
  if (name == "kr_classical") return Formula::kKrClassical;
  throw std::domain_error("unknown formula: " + name);
}

std::string formula_name(Formula f) {
  switch (f) {
    case Formula::kFxNa: return "fx_na";
    case Formula::kFfx: return "ffx";
    case Formula::kDe: return "de";
    case Formula::kDeRed: return "de_red";
    case Formula::kLd: return "ld";
    case Formula::kEds: return "eds";
    case Formula::kLds: return "lds";
    case Formula::kLdd: return "ldd";
    case Formula::kAmp: return "amp";
    case Formula::kO2h: return "o2h";
    case Formula::kKrClassical: return "kr_classical";
  }
  return "?";
}

BoundResult eval_bound(Formula f, const Inputs& inputs) {
  BoundResult r;
  r.formula = f;
  r.inputs = inputs;
  switch (f) {
    case Formula::kFxNa: {
      double k = get(inputs, "k"), n = get(inputs, "n");
      double p = get(inputs, "p"), q = get(inputs, "q");
      r.value = (p == 0.0 || q == 0.0)
                    ? 0.0
                    : from_log2((3.0 + 2.0 * lg(p) + lg(q) - (k + n)) / 2.0);
      break;
    }
    case Formula::kFfx: {
      double k = get(inputs, "k"), n = get(inputs, "n");
      double p = get(inputs, "p"), q = get(inputs, "q");
      r.value = (p == 0.0 || q == 0.0)
                    ? 0.0
                    : from_log2((3.0 + lg(p + q) + lg(p) + lg(q) - (k + n)) / 2.0);
      break;
    }
    case Formula::kDe: {
      double k = get(inputs, "k"), q = get(inputs, "q");
      if (k < 1.0) throw std::domain_error("de needs k >= 1");
      double core = (q == 0.0 || k == 1.0)
                        ? 0.0
                        : from_log2((3.0 * (lg(q) + lg(k) + lg(lg(k))) - 2.0 * k) / 6.0);
      r.value = 11.0 * core + from_log2(-k);
      break;
    }
    case Formula::kDeRed: {
      double k = get(inputs, "k"), adv = get(inputs, "adv");
      r.value = adv + from_log2(-k);
      break;
    }
    case Formula::kLd: {
      double d = get(inputs, "D"), q = get(inputs, "q");
      if (d < 32.0 || std::rint(lg(d)) != lg(d)) {
        throw std::domain_error("ld needs D a power of 2, D >= 32");
      }
      r.value = (q == 0.0)
                    ? 0.0
                    : 11.0 * from_log2((3.0 * (lg(q) + lg(lg(d)) + lg(lg(lg(d)))) - 2.0 * lg(d)) /
                                       6.0);
      break;
    }
    case Formula::kEds: {
      double d = get(inputs, "D"), q = get(inputs, "q");
      if (d <= 0.0) throw std::domain_error("eds needs D > 0");
      r.value = 9.0 * from_log2(3.0 * lg(q + 2.0) - 2.0 * lg(d));
      break;
    }
    case Formula::kLds: {
      r.value = 2.0 * get(inputs, "adv");
      break;
    }
    case Formula::kLdd: {
      double d = get(inputs, "D"), range = get(inputs, "R"), adv = get(inputs, "adv");
      if (d < 2.0 || range <= 0.0) throw std::domain_error("ldd needs D >= 2, R > 0");
      r.value = 1.0 - d * d / range - 1.5 * (lg(d) - 2.0) * (1.0 - adv);
      break;
    }
    case Formula::kAmp: {
      double t = get(inputs, "t"), delta = get(inputs, "delta"), q = get(inputs, "q");
      if (delta <= 0.0) throw std::domain_error("amp needs delta > 0");
      double reps = std::ceil(4.5 * (t + 1.0) * std::log(2.0) / (delta * delta));
      r.value = 1.0 - 2.0 * from_log2(-t);
      r.derived["repetitions"] = reps;
      r.derived["query_cost"] = q * reps;
      break;
    }
    case Formula::kO2h: {
      double q = get(inputs, "q"), guess = get(inputs, "guess");
      r.value = 2.0 * q * std::sqrt(guess);
      break;
    }
    case Formula::kKrClassical: {
      double k = get(inputs, "k"), n = get(inputs, "n");
      double p = get(inputs, "p"), q = get(inputs, "q");
      r.value = (p == 0.0 || q == 0.0) ? 0.0 : from_log2(lg(p) + lg(q) - (k + n - 1.0));
      break;
    }
  }
  r.vacuous = r.value >= 1.0;
  return r;
}

double invert_bound(Formula f, double target, const Inputs& fixed,
                    const std::string& free_input) {
  auto value_at = [&](double x) {
    Inputs in = fixed;
    in[free_input] = x;
    return eval_bound(f, in).value;
  };
  if (value_at(0.0) >= target) return 0.0;
  // Find an upper bracket by doubling; give up past 2^400.
  double hi = 1.0;
  while (value_at(hi) < target) {
    hi *= 2.0;
    if (hi > std::exp2(400.0)) throw std::domain_error("target unreachable for this formula");
  }
  double lo = hi / 2.0;
  if (hi <= 0x1p53) {
    // Exact integer search.
    std::uint64_t a = static_cast<std::uint64_t>(lo);
    std::uint64_t b = static_cast<std::uint64_t>(hi);
    while (a + 1 < b) {
      std::uint64_t mid = a + (b - a) / 2;
      if (value_at(static_cast<double>(mid)) >= target) {
        b = mid;
      } else {
        a = mid;
      }
    }
    return static_cast<double>(b);
  }
  // Beyond exact-integer range: bisect in log2 space.
  double llo = std::log2(lo), lhi = std::log2(hi);
  for (int i = 0; i < 200; ++i) {
    double mid = (llo + lhi) / 2.0;
    if (value_at(std::exp2(mid)) >= target) {
      lhi = mid;
    } else {
      llo = mid;
    }
  }
  return std::exp2(lhi);
}

std::string BoundResult::to_json() const {
  nlohmann::json j;
  j["formula"] = formula_name(formula);
  j["inputs"] = inputs;
  j["value"] = value;
  j["vacuous"] = vacuous;
  if (!derived.empty()) j["derived"] = derived;
  return j.dump();
}

}  // namespace kle::bounds
