#include "kle/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace kle {

double hoeffding_half_width(std::uint64_t trials, double fail_prob) {
  if (trials == 0 || fail_prob <= 0.0 || fail_prob >= 1.0) {
    throw std::invalid_argument("hoeffding: trials >= 1 and fail_prob in (0,1)");
  }
  return std::sqrt(std::log(2.0 / fail_prob) / (2.0 * static_cast<double>(trials)));
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

ChiSquare chi_square(std::span<const std::uint64_t> counts,
                     std::span<const double> expected_probs) {
  if (counts.size() != expected_probs.size() || counts.size() < 2) {
    throw std::invalid_argument("chi_square: need matching bins, at least 2");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("chi_square: no samples");
  ChiSquare r;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double expected = expected_probs[i] * static_cast<double>(total);
    if (expected <= 0.0) throw std::invalid_argument("chi_square: zero expected bin");
    double d = static_cast<double>(counts[i]) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = static_cast<int>(counts.size()) - 1;
  r.p_value = gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
  std::vector<double> probs(counts.size(), 1.0 / static_cast<double>(counts.size()));
  return chi_square(counts, probs);
}

}  // namespace kle
