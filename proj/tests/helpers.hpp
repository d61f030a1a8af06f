#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/operator.hpp"
#include "bamlab/rng.hpp"

namespace testing {

using namespace bam;

inline Environment fixed_env(int r, double xi, double sigma, int d = 2) {
  const Ball box = l1_ball(Site::origin(d), r);
  return Environment(box, std::vector<double>(box.size(), xi), std::vector<double>(box.size(), sigma),
                     PotentialDistribution::double_exponential(1.0), TrapDistribution::constant(1.0), 0);
}

inline Environment random_env(int r, std::uint64_t seed, double mu = 3.0, int d = 2) {
  return sample_environment(l1_ball(Site::origin(d), r), PotentialDistribution::double_exponential(1.0),
                            TrapDistribution::log_weibull(mu), seed);
}

inline void set_site(Environment& env, const Site& z, double xi, double sigma) {
  env.xi_mut()[env.index(z)] = xi;
  env.sigma_mut()[env.index(z)] = sigma;
}

// Dense copy of A built straight from the stencil, independent of the library's assembly.
inline Eigen::MatrixXd stencil_matrix(const Environment& env, const Domain& dom) {
  const int d = env.dim();
  const auto n = static_cast<Eigen::Index>(dom.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Site z = dom.site(static_cast<std::size_t>(i));
    a(i, i) = env.xi_at(z) - 1.0 / env.sigma_at(z);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Site y = dom.site(static_cast<std::size_t>(j));
      if (l1_distance(y, z) == 1) a(i, j) = 1.0 / (2.0 * d * env.sigma_at(y));
    }
  }
  return a;
}

inline double top_real_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double best = -1e300;
  for (Eigen::Index i = 0; i < a.rows(); ++i) best = std::max(best, es.eigenvalues()[i].real());
  return best;
}

}  // namespace testing
