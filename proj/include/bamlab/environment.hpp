#pragma once

// Random potential xi and trapping landscape sigma: distribution families,
// per-site sampling and truncation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bamlab/lattice.hpp"

namespace bam {

/// Law of xi(0), described through its upper tail P(xi > x) = exp(-e^{F(x)}).
class PotentialDistribution {
 public:
  enum class Kind { DoubleExponential, GeneralF, Weibull };

  /// P(xi > x) = exp(-e^{x/rho}) for all real x.
  static PotentialDistribution double_exponential(double rho);
  /// F tabulated at increasing abscissae, linearly interpolated and
  /// extrapolated with the end slopes; rho = 1 / (last slope).
  static PotentialDistribution general_f(std::vector<double> r, std::vector<double> f);
  /// P(xi > x) = exp(-x^gamma), x >= 0.
  static PotentialDistribution weibull(double gamma);

  Kind kind() const { return kind_; }
  std::string name() const;

  /// lim 1/F'(r); infinite for the Weibull family.
  double rho() const;
  double gamma() const { return param_; }

  double F(double x) const;
  double tail(double x) const;  // P(xi > x)
  double cdf(double x) const;   // P(xi <= x)
  double pdf(double x) const;
  double essential_inf() const;
  /// Inverse-CDF transform of u in (0, 1).
  double sample(double u) const;

 private:
  Kind kind_ = Kind::DoubleExponential;
  double param_ = 1.0;
  std::vector<double> r_, f_;
};

/// Law of sigma(0) >= delta_sigma > 0.
class TrapDistribution {
 public:
  enum class Kind { Constant, LogWeibull, Pareto, Weibull };

  static TrapDistribution constant(double c);
  /// -ln P(sigma > x) = (ln x)^mu for x >= 1, mu > 1.
  static TrapDistribution log_weibull(double mu);
  /// P(sigma > x) = x^{-mu}, x > 1.
  static TrapDistribution pareto(double mu);
  /// -ln P(sigma > x) = (x - 1)^mu, x > 1.
  static TrapDistribution weibull(double mu);

  Kind kind() const { return kind_; }
  std::string name() const;
  double mu() const { return param_; }
  double value() const { return param_; }  // Constant only

  double delta() const;  // essential infimum
  bool unbounded() const { return kind_ != Kind::Constant; }

  double tail(double x) const;  // P(sigma >= x)
  double cdf(double x) const;   // P(sigma < x)
  double pdf(double x) const;   // throws for Constant
  double sample(double u) const;

 private:
  Kind kind_ = Kind::Constant;
  double param_ = 1.0;
};

/// The sampled pair (xi, sigma) over a finite ball, indexed like the ball's
/// lexicographic member list.
class Environment {
 public:
  Environment(Ball box, std::vector<double> xi, std::vector<double> sigma,
              PotentialDistribution pot, TrapDistribution trap, std::uint64_t seed);

  const Ball& box() const { return box_; }
  const DomainPtr& domain() const { return domain_; }
  int dim() const { return box_.center.dim(); }
  std::size_t size() const { return xi_.size(); }

  const std::vector<double>& xi() const { return xi_; }
  const std::vector<double>& sigma() const { return sigma_; }
  std::vector<double>& xi_mut() { return xi_; }
  std::vector<double>& sigma_mut() { return sigma_; }

  double xi_at(const Site& z) const;
  double sigma_at(const Site& z) const;
  std::size_t index(const Site& z) const;  // throws if z is outside the box
  bool contains(const Site& z) const { return domain_->contains(z); }

  const PotentialDistribution& potential() const { return pot_; }
  const TrapDistribution& trap() const { return trap_; }
  std::uint64_t seed() const { return seed_; }
  double delta_sigma() const { return trap_.delta(); }

  /// Fields restricted to `dom` (which must lie inside the box), in the
  /// domain's index order.
  std::vector<double> xi_on(const Domain& dom) const;
  std::vector<double> sigma_on(const Domain& dom) const;

 private:
  Ball box_;
  DomainPtr domain_;
  std::vector<double> xi_, sigma_;
  PotentialDistribution pot_;
  TrapDistribution trap_;
  std::uint64_t seed_ = 0;
};

/// Inverse-CDF sampling of both fields on `box`; deterministic in `seed`.
/// xi and sigma are drawn from independent streams.
Environment sample_environment(const Ball& box, const PotentialDistribution& pot,
                               const TrapDistribution& trap, std::uint64_t seed);

/// xi truncated outside `center`: max(xi, level - c* + 1/delta_sigma) at the
/// center and min(xi, level - c*) elsewhere, with c* = 4/delta_sigma.
Environment truncate_potential_level(const Environment& env, const Site& center, double level);

/// Same with level = a_L.
Environment truncate_potential(const Environment& env, const Site& center, double L);

/// CSV rows  x0,...,x{d-1},xi,sigma  in box order.
void write_environment_csv(const Environment& env, std::ostream& os);

}  // namespace bam
