#include "bamlab/limitlaw.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bam {

double laplace_density(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += std::abs(v);
  return std::exp(-s) * std::pow(0.5, static_cast<double>(x.size()));
}

std::vector<double> laplace_sample(int d, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(d));
  for (auto& v : x) {
    const double e = rng.exponential();
    v = (rng.bits() & 1) ? e : -e;
  }
  return x;
}

double laplace_cdf(double x) { return x < 0 ? 0.5 * std::exp(x) : 1 - 0.5 * std::exp(-x); }

double order_stat_density(int k, const std::vector<std::vector<double>>& z, const std::vector<double>& psi, int d) {
  if (k < 1 || z.size() != static_cast<std::size_t>(k) || psi.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("order_stat_density: expected k points and k values");
  for (int i = 1; i < k; ++i)
    if (!(psi[static_cast<std::size_t>(i - 1)] > psi[static_cast<std::size_t>(i)])) return 0.0;
  double e = 0;
  for (int i = 0; i < k; ++i) {
    for (double v : z[static_cast<std::size_t>(i)]) e += std::abs(v);
    e += psi[static_cast<std::size_t>(i)];
  }
  e += std::pow(2.0, d) * std::exp(-psi.back());
  return std::exp(-e);
}

OrderStatSample sample_order_stats(int k, int d, Rng& rng) {
  if (k < 1) throw std::invalid_argument("sample_order_stats: k must be positive");
  OrderStatSample s;
  s.k = k;
  double gamma = 0;
  for (int j = 0; j < k; ++j) {
    gamma += rng.exponential();
    s.psi.push_back(-std::log(gamma) + d * std::log(2.0));
    s.z.push_back(laplace_sample(d, rng));
  }
  return s;
}

double top_order_stat_cdf(double x, int d) { return std::exp(-std::pow(2.0, d) * std::exp(-x)); }

double tail_curve(double s) { return std::exp(-s); }

std::vector<double> tail_curve(const std::vector<double>& s_grid) {
  std::vector<double> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.push_back(tail_curve(s));
  return out;
}

TiltedDensity::TiltedDensity(std::function<double(double)> base_pdf, std::function<double(double)> log_tilt,
                             double lo, double hi)
    : base_(std::move(base_pdf)), tilt_(std::move(log_tilt)), lo_(lo), hi_(hi) {
  double err = 0;
  norm_ = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [this](double x) { return integrand(x); }, lo_, hi_, 20, 1e-13, &err);
  if (!(norm_ > 0) || !std::isfinite(norm_)) throw std::domain_error("tilted density is not integrable");
}

double TiltedDensity::integrand(double x) const {
  const double b = base_(x);
  if (!(b > 0) || !std::isfinite(b)) return 0.0;
  return std::exp(std::log(b) + tilt_(x));
}

double TiltedDensity::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return integrand(x) / norm_;
}

double TiltedDensity::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                       [this](double s) { return integrand(s); }, lo_, x, 20, 1e-13) /
                   norm_;
  return std::clamp(v, 0.0, 1.0);
}

TiltedDensity nu_density(NuKind kind, const Site& y, const InfluenceData& influence, const PotentialDistribution& pot,
                         const TrapDistribution& trap) {
  if (kind == NuKind::Xi) {
    const double c = influence.cbar_xi(y);
    const double rho = pot.rho();
    return TiltedDensity([pot](double x) { return pot.pdf(x); }, [c, rho](double x) { return c * x / rho; },
                         pot.essential_inf(), std::numeric_limits<double>::infinity());
  }
  if (!trap.unbounded()) throw std::domain_error("nu_density: constant traps have no density");
  const double c = influence.cbar_sigma(y);
  const double ds = trap.delta();
  return TiltedDensity([trap](double x) { return trap.pdf(x); }, [c, ds](double x) { return c * ds / x; },
                       trap.delta(), std::numeric_limits<double>::infinity());
}

}  // namespace bam
