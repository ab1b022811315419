#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kle {

// Hoeffding two-sided confidence half-width for a mean of [0,1] samples:
// sqrt(ln(2/fail_prob) / (2 * trials)).
double hoeffding_half_width(std::uint64_t trials, double fail_prob);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson chi-square of observed counts against uniform expected counts.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

// Against arbitrary expected probabilities (same length as counts).
ChiSquare chi_square(std::span<const std::uint64_t> counts, std::span<const double> expected_probs);

}  // namespace kle
