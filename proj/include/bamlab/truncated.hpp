#pragma once

// Truncated eigenvalues at the origin, the empirical scale A_t and the
// sampled tail of the truncated eigenvalue.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/scales.hpp"

namespace bam {

class BudgetError : public std::invalid_argument {
 public:
  BudgetError(const std::string& what, std::size_t required)
      : std::invalid_argument(what + " (need M >= " + std::to_string(required) + ")"), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

struct TruncatedEigenConfig {
  double t = 30;
  int d = 2;
  PotentialDistribution pot = PotentialDistribution::double_exponential(1.0);
  TrapDistribution trap = TrapDistribution::log_weibull(3.0);
  std::size_t samples = 10'000'000;  // M
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t block = 1 << 16;  // samples per random stream
  int radius = -1;              // R*_t when negative
  double level = std::numeric_limits<double>::quiet_NaN();  // a_{L*_t} when NaN
};

/// Principal Dirichlet eigenvalue on B_r(center) of the field truncated
/// outside `center` at `level`.
double truncated_eigenvalue(const Environment& env, const Site& center, int r, double level);

/// M draws of the truncated eigenvalue at the origin.  Draws whose value is
/// certainly at most `cutoff` are only counted; the rest are kept, sorted
/// in decreasing order.
struct TruncatedSample {
  double t = 0;
  int d = 0;
  int radius = 0;
  double level = 0, cutoff = 0;
  std::size_t total = 0;
  std::vector<double> upper;  // values above cutoff, decreasing

  /// (k+1)-th largest value; throws if it falls in the censored range.
  double kth_largest(std::size_t k) const;
  /// #{samples > x}; x must be at least the cutoff.
  std::size_t count_above(double x) const;
};

/// Censoring cutoff a_t - 1/delta_sigma - 0.5, below the population A_t.
double truncated_cutoff(const ScaleSet& scales);

TruncatedSample sample_truncated_eigenvalues(const TruncatedEigenConfig& cfg, const ScaleSet& scales);

/// Empirical (1 - q t^{-d}) quantile: the (k+1)-th largest sample with
/// k = floor(q M t^{-d}).
double empirical_A(const TruncatedSample& s, double q = 1.0);

/// Samples and estimates A_t.  Throws BudgetError unless M >= 100 t^d.
double estimate_A(const TruncatedEigenConfig& cfg);

}  // namespace bam
