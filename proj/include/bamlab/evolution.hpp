#pragma once

// Cauchy problem  u' = (Delta sigma^{-1} + xi) u,  u(0) = 1_{start},  with
// zero Dirichlet data outside the domain.

#include <cmath>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/operator.hpp"

namespace bam {

/// u(t, z) = exp(log_mass_offset) * weights[z];  U(t) = exp(log_mass_offset).
struct MassFunction {
  DomainPtr domain;
  double log_mass_offset = 0;
  std::vector<double> weights;  // sums to 1
  double t = 0;
  long accepted_steps = 0, rejected_steps = 0;

  double log_u(std::size_t i) const { return log_mass_offset + std::log(weights[i]); }
  double u(std::size_t i) const { return std::exp(log_mass_offset) * weights[i]; }
  double total_mass() const { return std::exp(log_mass_offset); }
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-12;  // relative to the (unit) l1 mass of the weights
  double min_step = 1e-12;
  long max_steps = 50'000'000;
};

class EvolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive Dormand-Prince 5(4) on the gauge-shifted system
/// v' = (A - max xi) v, renormalised to unit l1 mass after every step.
MassFunction evolve(const SparseOperator& op, std::size_t start, double t_end, const EvolveOptions& opt = {});
MassFunction evolve(const Environment& env, DomainPtr domain, double t_end, const EvolveOptions& opt = {},
                    std::optional<Site> start = std::nullopt);

/// weights[z]; throws std::out_of_range if z is outside the domain.
double localisation_ratio(const MassFunction& u, const Site& z);

/// CSV rows  x0,...,x{d-1},weight,log_mass_offset,t.
void write_snapshot_csv(const MassFunction& u, std::ostream& os);

}  // namespace bam
