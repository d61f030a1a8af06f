#pragma once

// Finite-t inequalities for the Dirichlet problem on B_r(z): a priori
// eigenvalue bounds, the cluster expansion, the two mass bounds and the
// solution-to-eigenfunction comparison.  Every check is phrased lhs <= rhs.

#include <string>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/spectral.hpp"

namespace bam {

inline constexpr double kInequalitySlack = 1e-9;

struct InequalityCheck {
  std::string name;
  double lhs = 0, rhs = 0;

  /// lhs <= rhs up to kInequalitySlack * max(1, |rhs|).
  bool holds() const;
  double excess() const { return lhs - rhs; }
};

struct InequalityTally {
  std::size_t checked = 0, violated = 0;
  double worst_excess = -1e300;
  std::string worst_name;

  void add(const InequalityCheck& c);
  void add(const std::vector<InequalityCheck>& cs) {
    for (const auto& c : cs) add(c);
  }
  bool clean() const { return violated == 0; }
};

/// max (xi - 1/sigma) <= lambda  and  lambda <= max xi  over B_r(z).
std::vector<InequalityCheck> check_a_priori(const Environment& env, const Site& z, int r, double lambda);

/// Stopped mass up to the exit of B_r(z) at level gamma > lambda against
/// 1 + max sigma^{-1} |B_r| / (gamma - lambda).
InequalityCheck check_cluster_expansion(const Environment& env, const Site& z, int r, double lambda, double gamma);

/// Solution of the Dirichlet problem on B_r(z) started at z, at time t.
struct LocalSolution {
  double log_total = 0;           // ln U(t)
  std::vector<double> weights;    // u(t, .) / U(t)
  std::size_t center = 0;
};

LocalSolution local_solution(const Environment& env, const Site& z, int r, double t, double rtol = 1e-11);

/// sigma(z)^{-1} phi(z)^2 / |sigma^{-1/2} phi|^2 <= e^{-t lambda} u(t, z)
/// and e^{-t lambda} U(t) <= |phi|_1 / phi(z).
std::vector<InequalityCheck> check_mass_bounds(const Environment& env, const Site& z, int r, double t,
                                               const EigenPair& pair, const LocalSolution& sol);

/// u(t, y) / U(t) <= sigma(z) |sigma^{-1/2} phi|^2 phi(y) / phi(z)^3 for
/// all y in B_r(z), with the hitting site x = z.  Reports the worst y.
InequalityCheck check_comparison(const Environment& env, const Site& z, int r, const EigenPair& pair,
                                 const LocalSolution& sol);

/// All of the above at radius r and the given times; gamma = lambda + gamma_offset.
std::vector<InequalityCheck> inequality_suite(const Environment& env, const Site& z, int r,
                                              const std::vector<double>& times, double gamma_offset = 0.5);

}  // namespace bam
