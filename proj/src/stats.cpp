#include "bamlab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bam {

double kolmogorov_q(double lambda) {
  if (lambda <= 0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  if (samples.size() < 20) throw std::invalid_argument("ks_test: need at least 20 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KsResult r;
  r.statistic = std::clamp(d, 0.0, 1.0);
  const double sn = std::sqrt(n);
  r.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * r.statistic);
  return r;
}

ChiSquareResult chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected,
                                int fitted_params) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_test: need matching bins, at least two");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0)) throw std::invalid_argument("chi_square_test: expected counts must be positive");
    r.statistic += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  r.dof = static_cast<double>(observed.size()) - 1 - fitted_params;
  if (r.dof < 1) throw std::invalid_argument("chi_square_test: no degrees of freedom left");
  r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
  return r;
}

double quantile(std::vector<double> data, double p) {
  if (data.empty()) throw std::invalid_argument("quantile: empty data");
  std::sort(data.begin(), data.end());
  const double h = (static_cast<double>(data.size()) - 1) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, data.size() - 1);
  if (lo == hi || data[lo] == data[hi]) return data[lo];
  if (std::isinf(data[hi])) return h == static_cast<double>(lo) ? data[lo] : data[hi];
  return data[lo] + (h - static_cast<double>(lo)) * (data[hi] - data[lo]);
}

double median(std::vector<double> data) { return quantile(std::move(data), 0.5); }

std::pair<double, double> mean_se(const std::vector<double>& data) {
  if (data.size() < 2) throw std::invalid_argument("mean_se: need two values");
  double s = 0, s2 = 0;
  for (double x : data) s += x;
  const double n = static_cast<double>(data.size());
  const double m = s / n;
  for (double x : data) s2 += (x - m) * (x - m);
  return {m, std::sqrt(s2 / (n - 1) / n)};
}

}  // namespace bam
