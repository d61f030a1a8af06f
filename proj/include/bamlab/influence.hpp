#pragma once

// Radii of influence, interface sets and the path-count constants c-bar(y).

#include <vector>

#include "bamlab/lattice.hpp"

namespace bam {

struct InfluenceData {
  double mu = 0, rho = 0, delta_sigma = 0;
  int d = 0;
  int rho_xi = 0;     // floor((mu - 1) / 2)
  int rho_sigma = 0;  // floor(mu / 2)
  std::vector<Site> F_xi;     // {|y| = rho_xi} iff mu is an odd integer
  std::vector<Site> F_sigma;  // {|y| = rho_sigma} iff mu is an even integer

  /// mu n(y)^2 / (2 d rho delta_sigma)^{2|y| - 1}
  double cbar(const Site& y) const;
  bool in_F_xi(const Site& y) const;
  bool in_F_sigma(const Site& y) const;
  double cbar_xi(const Site& y) const { return in_F_xi(y) ? cbar(y) : 0.0; }
  double cbar_sigma(const Site& y) const { return in_F_sigma(y) ? cbar(y) : 0.0; }
};

/// Throws std::invalid_argument unless mu > 1.
InfluenceData radii_of_influence(double mu, double rho, double delta_sigma, int d);

}  // namespace bam
