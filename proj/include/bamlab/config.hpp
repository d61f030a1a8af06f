#pragma once

// Experiment configuration: a flat key = value file.
//
//   dimension, potential_kind, rho, gamma, trap_kind, mu, trap_value, seed,
//   t_list, replicas, workers, samples, tail_t, s_grid, profile_m, delta,
//   perc_q, perc_norm, perc_samples

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bamlab/environment.hpp"

namespace bam {

struct LabConfig {
  int dimension = 2;
  std::string potential_kind = "double_exponential";  // or weibull
  double rho = 1.0;
  double gamma = 2.0;  // weibull potential only
  std::string trap_kind = "log_weibull";  // pareto, weibull, constant
  double mu = 3.0;
  double trap_value = 1.0;  // constant traps only
  std::uint64_t seed = 1;
  std::vector<double> t_list{20, 30, 45};
  int replicas = 100;
  unsigned workers = 0;  // 0: all hardware threads
  std::size_t samples = 10'000'000;
  double tail_t = 30;
  std::vector<double> s_grid{-1, 0, 1};
  int profile_m = -1;  // rho_sigma + 1 when negative
  double delta = -1;   // min(0.5, delta_sigma / 2) when negative
  std::vector<double> perc_q{0.2, 0.1, 0.05};
  int perc_norm = 30;
  int perc_samples = 200;

  PotentialDistribution potential() const;
  TrapDistribution trap() const;
  unsigned effective_workers() const;

  /// Throws std::invalid_argument describing the first bad key.
  void validate() const;
  /// key = value lines in a fixed order; used as the report header.
  std::string echo() const;
};

/// Unknown keys are rejected.
LabConfig parse_config(std::istream& is);
LabConfig load_config(const std::string& path);

/// Applies a single key = value assignment (as from a file or a flag).
void set_config_key(LabConfig& cfg, const std::string& key, const std::string& value);

}  // namespace bam
