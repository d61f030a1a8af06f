#pragma once

// Deterministic scales attached to a time t.

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/influence.hpp"

namespace bam {

/// ln ln (t v e)
double ln2(double t);
/// ln ln ln (t v e^e); zero for t <= e^e.
double ln3(double t);

/// inf{u > 1 : e^{F(u)} >= d ln t} v 1.  Throws std::domain_error if
/// d ln t <= 1.
double scale_a(double t, const PotentialDistribution& pot, int d);

/// ceil((ln L)^{0.7/d}), at least 1.
int mesoscopic_radius(double L, int d);

double gap_scale(double t, double rho, int d);       // d_t = rho / (d ln t)
double distance_scale(double t, double rho, int d);  // r_t = t d_t / ln3 t (infinite if ln3 t = 0)
double macroscopic_scale(double t);                  // L_t = t ln2 t

/// L* with r_{L*} = L, on the branch where s -> r_s is increasing.
double inverse_distance_scale(double L, double rho, int d);

/// Admissible exponent for the profile rectangles: the smallest positive
/// member of the kappa_n, kappa~_n recursion.
double profile_kappa(double mu);

struct ScaleSet {
  double t = 0;
  int d = 0;
  double rho = 0, delta_sigma = 1;
  double a_t = 0;
  double A_t = std::numeric_limits<double>::quiet_NaN();  // filled by estimate_A
  double d_t = 0, r_t = 0, L_t = 0;
  int R_L = 1;  // R_{L_t}
  double L_star = 0;
  int R_star = 1;  // R_{L*_t}
  double h_t = 1, h_star = 1;
  double s_xi = 0, s_sigma = 0;
  double q_sigma = std::numeric_limits<double>::quiet_NaN();  // log-Weibull traps only
  std::vector<std::pair<Site, double>> q_xi;                  // nonzero entries only
  double f_t = 0, g_t = 0;                                    // profile rectangle widths

  double q_xi_at(const Site& y) const;
  int macrobox_radius() const { return static_cast<int>(std::floor(L_t)); }
};

/// Requires t >= e^e.
ScaleSet build_scales(double t, const PotentialDistribution& pot, const TrapDistribution& trap, int d);

/// Right-hand side of the implicit condition on h_t (without the factor 10).
double h_condition(double h, double a_t, const PotentialDistribution& pot, const TrapDistribution& trap);
double auxiliary_h(double a_t, const PotentialDistribution& pot, const TrapDistribution& trap);

}  // namespace bam
