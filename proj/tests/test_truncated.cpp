#include <doctest.h>

#include "bamlab/spectral.hpp"
#include "bamlab/truncated.hpp"
#include "helpers.hpp"

using namespace bam;
using namespace testing;

TEST_SUITE("truncated") {

TEST_CASE("radius zero is the clamped single-site value") {
  const Environment env = random_env(2, 800);
  for (double level : {-5.0, 0.0, 2.0, 9.0}) {
    const double xi = env.xi_at(Site::origin(2)), s = env.sigma_at(Site::origin(2));
    CHECK(truncated_eigenvalue(env, Site::origin(2), 0, level) == std::max(xi, level - 3.0) - 1.0 / s);
  }
}

TEST_CASE("truncation never raises the eigenvalue above the untruncated peak") {
  for (int k = 0; k < 50; ++k) {
    const Environment env = random_env(3, derive_seed(801, k));
    const double level = 2.0;
    const double lam = truncated_eigenvalue(env, Site::origin(2), 2, level);
    const Environment tr = truncate_potential_level(env, Site::origin(2), level);
    CHECK(lam == principal_eigenpair(tr, Site::origin(2), 2).lambda);
    double top = -1e300;
    for (double x : tr.xi()) top = std::max(top, x);
    CHECK(lam <= top + 1e-12);
  }
}

TEST_CASE("constant traps at radius zero: A_t = a_t - 1") {
  const double t = 20;
  TruncatedEigenConfig cfg;
  cfg.t = t;
  cfg.trap = TrapDistribution::constant(1.0);
  cfg.samples = 400000;
  cfg.radius = 0;
  cfg.seed = 5;
  const ScaleSet s = build_scales(t, cfg.pot, cfg.trap, 2);
  const double A = estimate_A(cfg);
  // sample quantile at p = t^{-2}: s.e. sqrt(p(1-p)/M) / f(a_t), f(a_t) = 2 ln t * p
  const double p = 1 / (t * t);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(cfg.samples)) / (2 * std::log(t) * p);
  CHECK(std::abs(A - (s.a_t - 1)) <= 3 * se);
}

TEST_CASE("budget check") {
  TruncatedEigenConfig cfg;
  cfg.t = 20;
  cfg.samples = 39999;
  CHECK_THROWS_AS(estimate_A(cfg), BudgetError);
  try {
    estimate_A(cfg);
  } catch (const BudgetError& e) {
    CHECK(e.required() == 40000);
  }
}

TEST_CASE("censored sample") {
  TruncatedEigenConfig cfg;
  cfg.t = 20;
  cfg.samples = 100000;
  cfg.seed = 9;
  const ScaleSet s = build_scales(cfg.t, cfg.pot, cfg.trap, 2);
  const TruncatedSample a = sample_truncated_eigenvalues(cfg, s);
  CHECK(a.total == 100000);
  CHECK(a.cutoff == truncated_cutoff(s));
  CHECK(a.cutoff == s.a_t - 1.5);
  CHECK(std::is_sorted(a.upper.begin(), a.upper.end(), std::greater<>()));
  for (double v : a.upper) CHECK(v > a.cutoff);
  CHECK(a.kth_largest(0) == a.upper.front());
  CHECK_THROWS_AS(a.kth_largest(a.upper.size()), std::domain_error);
  CHECK(a.count_above(a.upper[9]) == 9);
  CHECK_THROWS(a.count_above(a.cutoff - 1));
  CHECK(empirical_A(a) == a.kth_largest(100000 / 400));
  CHECK(empirical_A(a, 2.0) == a.kth_largest(2 * 100000 / 400));

  cfg.workers = 3;
  const TruncatedSample b = sample_truncated_eigenvalues(cfg, s);
  CHECK(a.upper == b.upper);
  cfg.seed = 10;
  CHECK(sample_truncated_eigenvalues(cfg, s).upper != a.upper);
}

}
