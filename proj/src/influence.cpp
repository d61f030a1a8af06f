#include "bamlab/influence.hpp"

#include <cmath>
#include <stdexcept>

namespace bam {

namespace {
bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }
}  // namespace

double InfluenceData::cbar(const Site& y) const {
  const double n = static_cast<double>(shortest_path_count(y));
  return mu * n * n / std::pow(2.0 * d * rho * delta_sigma, 2 * y.norm() - 1);
}

bool InfluenceData::in_F_xi(const Site& y) const { return !F_xi.empty() && y.norm() == rho_xi; }
bool InfluenceData::in_F_sigma(const Site& y) const { return !F_sigma.empty() && y.norm() == rho_sigma; }

InfluenceData radii_of_influence(double mu, double rho, double delta_sigma, int d) {
  if (!(mu > 1.0) || !std::isfinite(mu)) throw std::invalid_argument("radii_of_influence: mu must exceed 1");
  if (!(rho > 0) || !(delta_sigma > 0)) throw std::invalid_argument("radii_of_influence: rho and delta_sigma must be positive");
  InfluenceData inf;
  inf.mu = mu;
  inf.rho = rho;
  inf.delta_sigma = delta_sigma;
  inf.d = d;
  inf.rho_xi = static_cast<int>(std::floor((mu - 1) / 2));
  inf.rho_sigma = static_cast<int>(std::floor(mu / 2));
  const Site o = Site::origin(d);
  if (is_integer(mu)) {
    const long m = static_cast<long>(mu);
    if (m % 2 == 1) inf.F_xi = l1_sphere(o, inf.rho_xi);
    else inf.F_sigma = l1_sphere(o, inf.rho_sigma);
  }
  return inf;
}

}  // namespace bam
