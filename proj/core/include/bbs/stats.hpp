#pragma once

#include <cstdint>
#include <vector>

namespace bbs {

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson test of counts against cell probabilities. Cells with expected
// count below min_expected are pooled.
ChiSquare chi_square_test(const std::vector<double>& counts, const std::vector<double>& probs,
                          double min_expected = 5.0);

// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, int dof);

double lag1_autocorrelation(const std::vector<double>& xs);

// Kolmogorov-Smirnov distance of the sample to Uniform(0,1).
double ks_uniform(std::vector<double> samples);

}  // namespace bbs
