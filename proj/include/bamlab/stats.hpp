#pragma once

// Goodness-of-fit and order-statistic helpers.

#include <functional>
#include <vector>

namespace bam {

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

/// Two-sided one-sample Kolmogorov-Smirnov test with the asymptotic
/// Kolmogorov p-value (Stephens' small-sample correction).  Needs n >= 20.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution.
double kolmogorov_q(double lambda);

struct ChiSquareResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

/// Pearson chi-square of observed counts against expected counts;
/// dof = bins - 1 - fitted_params.
ChiSquareResult chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected,
                                int fitted_params = 0);

/// Linear-interpolated quantile (type 7) of the data; +inf entries are kept.
double quantile(std::vector<double> data, double p);
double median(std::vector<double> data);

/// Mean and standard error of the mean.
std::pair<double, double> mean_se(const std::vector<double>& data);

}  // namespace bam
