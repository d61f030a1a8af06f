#pragma once

// Limit objects: Laplace law of the rescaled localisation site, top order
// statistics of the Poisson limit, the tail curve and the interface laws.

#include <functional>
#include <span>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/influence.hpp"
#include "bamlab/rng.hpp"

namespace bam {

/// prod_i e^{-|x_i|} / 2
double laplace_density(std::span<const double> x);
/// Independent Laplace(0, 1) coordinates.
std::vector<double> laplace_sample(int d, Rng& rng);
double laplace_cdf(double x);

struct OrderStatSample {
  int k = 0;
  std::vector<std::vector<double>> z;  // k points of R^d
  std::vector<double> psi;             // strictly decreasing
};

/// 1{psi_1 > ... > psi_k} exp(-(sum |z_i| + sum psi_i + 2^d e^{-psi_k}))
double order_stat_density(int k, const std::vector<std::vector<double>>& z, const std::vector<double>& psi, int d);

/// Top k atoms of a Poisson process with intensity 2^d e^{-x} dx, paired with
/// i.i.d. points of density 2^{-d} e^{-|z|}.
OrderStatSample sample_order_stats(int k, int d, Rng& rng);

/// P(psi_1 <= x) = exp(-2^d e^{-x})
double top_order_stat_cdf(double x, int d);

/// s -> e^{-s}
double tail_curve(double s);
std::vector<double> tail_curve(const std::vector<double>& s_grid);

/// A base density multiplied by exp(tilt(x)) and renormalised by quadrature.
class TiltedDensity {
 public:
  TiltedDensity(std::function<double(double)> base_pdf, std::function<double(double)> log_tilt, double lo,
                double hi);

  double pdf(double x) const;
  double cdf(double x) const;
  double normaliser() const { return norm_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }

 private:
  double integrand(double x) const;
  std::function<double(double)> base_, tilt_;
  double lo_, hi_, norm_ = 1;
};

enum class NuKind { Xi, Sigma };

/// Density proportional to e^{c x / rho} f_xi(x) (Xi) or e^{c delta_sigma / x}
/// f_sigma(x) (Sigma), with c = c-bar(y) on the interface set and 0 off it.
TiltedDensity nu_density(NuKind kind, const Site& y, const InfluenceData& influence, const PotentialDistribution& pot,
                         const TrapDistribution& trap);

}  // namespace bam
