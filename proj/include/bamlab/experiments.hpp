#pragma once

// Ensemble harness: localisation, tail, profile and percolation experiments.
// Replica i at grid point j always uses the stream derive_seed(derive_seed(seed, j), i),
// so every table is independent of the worker count.

#include <optional>
#include <string>
#include <vector>

#include "bamlab/config.hpp"
#include "bamlab/lattice.hpp"
#include "bamlab/report.hpp"
#include "bamlab/stats.hpp"

namespace bam {

std::uint64_t replica_seed(std::uint64_t master, std::size_t grid_index, std::size_t replica);

// ---------------------------------------------------------------- localisation

struct ReplicaDiagnostics {
  double t = 0;
  int replica = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;  // empty exceedance set
  std::string error;        // non-empty if the replica failed
  Site z;
  double ratio = 0, xi_z = 0, sigma_z = 0, lambda_z = 0;
  double psi1 = 0, psi2 = 0, gap = 0;
  bool separation_flag = false;  // xi < a_L - 4/delta_sigma on B_{2R}(Z) \ {Z}
  bool gap_flag = false;         // lambda(Z) - max_{B_R(Z) \ {Z}} xi > 2/delta_sigma
  bool eigbound_holds = false;   // lambda(Z) <= xi(Z) - sigma(Z)^{-1} / 2
  bool local_agrees = false;     // argmax of the local functional is Z
  std::vector<double> rescaled;  // (d/rho) ln t ln3 t / t * Z
  std::size_t pi_size = 0;
  std::size_t ineq_checked = 0, ineq_violated = 0;

  bool usable() const { return !degenerate && error.empty(); }
};

struct LocalisationAggregate {
  double t = 0;
  int n_ok = 0, n_degenerate = 0, n_error = 0;
  double median_ratio = 0, median_sigma_z = 0, field_median_sigma = 0, median_xi_gap = 0;
  double local_agreement = 0;
  double separation_fraction = 0, gap_fraction = 0;
  int eigbound_violations = 0;          // all usable replicas
  int eigbound_flagged_violations = 0;  // among replicas with either flag set
  std::size_t ineq_checked = 0, ineq_violated = 0;
  KsResult laplace_ks;  // pooled rescaled coordinates; asymptotic law, finite-size trend only
  bool aborted = false;  // more than 20% of replicas excluded
};

struct EnsembleReport {
  std::string config_echo;
  int d = 2;
  std::vector<ReplicaDiagnostics> rows;  // sorted by (t index, replica)
  std::vector<LocalisationAggregate> aggregates;

  Table table() const;
  std::string summary() const;
  Report report() const;
  bool aborted() const;
};

ReplicaDiagnostics localisation_replica(const LabConfig& cfg, double t, int replica, std::uint64_t seed);

/// Needs at least 20 replicas.
EnsembleReport run_localisation_experiment(const LabConfig& cfg);

// ------------------------------------------------------------------------ tail

struct TailRow {
  double s = 0, threshold = 0;
  std::size_t count = 0;
  double p_hat = 0, empirical = 0, se = 0, theory = 0, z = 0;
  bool within = false;  // |z| <= 3
};

struct TailReport {
  double t = 0;
  int d = 2;
  std::size_t samples = 0;
  double a_t = 0, A_t = 0, d_t = 0, cutoff = 0;
  int radius = 0;
  std::vector<TailRow> rows;

  Table table() const;
  std::string summary() const;
  Report report() const;
  bool all_within() const;
};

/// Uses tail_t, s_grid, samples and seed; requires M >= 100 t^d e^{max s}.
TailReport run_tail_experiment(const LabConfig& cfg);

// --------------------------------------------------------------------- profile

struct ProfileAggregate {
  double t = 0;
  int n_ok = 0, n_excluded = 0;
  double median_trap_scaling = 0, iqr_trap_scaling = 0;
  double in_S_xi = 0, in_S_sigma = 0;
  KsResult ks_xi_out, ks_sigma_out;  // at the out-of-radius offset against the base laws
  std::string interface_kind;        // "xi", "sigma" or "none"
  KsResult ks_interface;
};

struct ProfileReport {
  std::string config_echo;
  int m = 0;
  Site out_offset, interface_offset;
  Table replicas, sites;
  std::vector<ProfileAggregate> aggregates;

  std::string summary() const;
  Report report() const;
};

/// Double-exponential potential and log-Weibull traps only.
ProfileReport run_profile_experiment(const LabConfig& cfg);

// ----------------------------------------------------------------- percolation

struct PercolationReport {
  int norm = 0;
  std::vector<double> q;
  std::vector<double> p95;  // 95th percentile of d_inf(0, v) / |v| per q
  bool all_open_exact = true;
  Table table;

  std::string summary() const;
  Report report() const;
  bool decreasing() const;
};

/// Sites closed independently with probability q inside B_{2|v|}; 0 and v
/// are forced open.  v uniform on the sphere of radius perc_norm.
PercolationReport run_percolation_experiment(const LabConfig& cfg);

}  // namespace bam
