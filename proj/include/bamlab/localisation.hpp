#pragma once

// High exceedances, penalisation functionals, the localisation site and
// local profiles.

#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/influence.hpp"
#include "bamlab/scales.hpp"

namespace bam {

/// {x in B_L : xi(x) > a_L - eta}, restricted to the environment box.
std::vector<Site> high_exceedances(const Environment& env, double L, double eta);

/// Default exceedance margin min(0.5, delta_sigma / 2).
double default_delta(double delta_sigma);

/// Psi(z) = lambda(z) - (ln3 t - c)^+ |z| / t on the exceedance set, -inf
/// elsewhere.  Only the finite entries are stored.
struct PsiMap {
  double t = 0, c = 0, delta = 0;
  int radius = 0;      // Dirichlet radius of the local eigenproblems
  int rho_xi = -1;     // potential radius for the local variant, -1 if unused
  std::vector<Site> sites;
  std::vector<double> lambda, values;

  double value_at(const Site& z) const;  // -inf outside the exceedance set
  bool empty() const { return sites.empty(); }
};

double penalty(double t, double c, const Site& z);

/// Eigenvalues at radius R_{L_t} (or `radius` if nonnegative).
PsiMap psi_functional(const Environment& env, const ScaleSet& scales, double c, double delta, unsigned workers = 1,
                      int radius = -1);

/// Local variant with potential radius rho_xi and Dirichlet radius
/// rho_sigma and c = 0.
PsiMap psi_local(const Environment& env, const ScaleSet& scales, int rho_xi, int rho_sigma, double delta,
                 unsigned workers = 1);
PsiMap psi_local(const Environment& env, const ScaleSet& scales, const InfluenceData& influence, double delta,
                 unsigned workers = 1);

/// Top k entries by value; equal values are ordered lexicographically
/// descending.  Throws if fewer than k finite values exist.
std::vector<std::pair<Site, double>> top_k(const PsiMap& psi, int k);

/// CSV  x0,...,lambda,psi,in_Pi  for the exceedance sites.
void write_psi_csv(const PsiMap& psi, std::ostream& os);

struct LocalProfile {
  Site center;
  int m = 0;
  std::vector<Site> offsets;         // B_m \ {0}, lexicographic
  std::vector<double> xi_raw;        // xi(center + y)
  std::vector<double> xi_shifted;    // xi(center + y) - q_xi(y)
  std::vector<char> pinned_xi;       // y in (B_{rho_xi} \ {0}) \ F_xi
  std::vector<double> sigma_raw;     // sigma(center + y)
  double sigma_center = 0;
  double sigma_scaled = 0;           // sigma(center) / q_sigma
  bool in_S_xi = false, in_S_sigma = false;
};

/// Requires m >= rho_sigma and B_m(center) inside the box.
LocalProfile local_profile(const Environment& env, const ScaleSet& scales, const InfluenceData& influence,
                           const Site& center, int m);

}  // namespace bam
