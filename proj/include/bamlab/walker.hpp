#pragma once

// Bouchaud trap model walks, Feynman-Kac estimators, path weights, chemical
// distance in site percolation and good paths.

#include <iosfwd>
#include <optional>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/rng.hpp"
#include "bamlab/scales.hpp"

namespace bam {

using Path = std::vector<Site>;

/// Jump i moves sites[i] -> sites[i+1] at jump_times[i].  A walk leaving the
/// environment box is killed at kill_time and its last site is the exit site.
struct Trajectory {
  std::vector<Site> sites;
  std::vector<double> jump_times;
  double t_end = 0;
  bool killed = false;
  double kill_time = 0;
};

/// Holding time Exp(mean sigma(z)), then a uniform nearest neighbour.
Trajectory simulate_btm(const Environment& env, const Site& start, double t_end, Rng& rng);

void write_trajectory_csv(const Trajectory& tr, std::ostream& os);

struct McEstimate {
  double value = 0;
  double std_error = 0;
  std::size_t n = 0;
};

/// Mean of exp(int_0^t xi(X_s) ds) 1{X_t = target} over BTM walks started at
/// `start` (default the origin) and killed on leaving the box.  n >= 1000.
McEstimate fk_estimate(const Environment& env, double t, const Site& target, std::size_t n, Rng& rng,
                       std::optional<Site> start = std::nullopt);

/// prod_{i<k} (2d)^{-1} / (1 + sigma(p_i)(gamma - xi(p_i))); requires gamma
/// above xi on p_0..p_{k-1}.
double path_weight(const Path& path, double gamma, const Environment& env);

/// Monte Carlo estimate of E[exp int_0^{T_k} (xi - gamma) ; first k steps follow p].
McEstimate path_weight_estimate(const Path& path, double gamma, const Environment& env, std::size_t n, Rng& rng);

/// Length of a shortest nearest-neighbour path u -> v inside `region` through
/// open sites (all sites, or all but the last when endpoint_exempt).
/// nullopt encodes infinity.
std::optional<int> chemical_distance(const Domain& region, const std::vector<char>& open, const Site& u,
                                     const Site& v, bool endpoint_exempt);

/// Shortest path 0 -> z through sites with xi > -s_xi and sigma < s_sigma
/// (z itself exempt), inside the interior of the macrobox; returned only if
/// its length is at most |z| (1 + h*).
std::optional<Path> find_good_path(const Environment& env, const ScaleSet& scales, const Site& z);

}  // namespace bam
