#include <doctest.h>

#include "bamlab/selftest.hpp"
#include "bamlab/spectral.hpp"
#include "helpers.hpp"

using namespace bam;
using namespace testing;

namespace {

double max_over_ball(const Environment& env, const Site& z, int r, bool minus_inverse_sigma) {
  double m = -1e300;
  for (const Site& x : l1_ball(z, r).members)
    m = std::max(m, env.xi_at(x) - (minus_inverse_sigma ? 1.0 / env.sigma_at(x) : 0.0));
  return m;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("single site eigenpair") {
  const Environment env = random_env(0, 3);
  const EigenPair p = principal_eigenpair(env, Site::origin(2), 0);
  CHECK(p.lambda == env.xi()[0] - 1.0 / env.sigma()[0]);
  REQUIRE(p.phi.size() == 1);
  CHECK(p.phi[0] == 1.0);
}

TEST_CASE("two-site closed form root") {
  Environment env = fixed_env(1, 0.0, 1.0);
  set_site(env, Site{0, 0}, 3.0, 2.0);
  set_site(env, Site{1, 0}, 1.0, 1.0);
  const Domain dom(std::vector<Site>{Site{0, 0}, Site{1, 0}});
  const EigenPair p = principal_eigenpair(assemble(env, dom, false));
  // x^2 - 2.5 x - 0.03125 = 0
  const double root = (2.5 + std::sqrt(2.5 * 2.5 + 4 * 0.03125)) / 2;
  CHECK(std::abs(p.lambda - root) <= 1e-10);
  CHECK(std::abs(p.lambda - top_real_eigenvalue(stencil_matrix(env, dom))) <= 1e-10);
}

TEST_CASE("eigenpair invariants and dense agreement") {
  for (int k = 0; k < 30; ++k) {
    const Environment env = random_env(4, derive_seed(70, k));
    const int r = 1 + k % 4;
    const EigenPair p = principal_eigenpair(env, Site::origin(2), r);
    double norm = 0, neg = 0;
    for (double v : p.phi) {
      norm += v * v;
      neg = std::min(neg, v);
    }
    CHECK(std::abs(std::sqrt(norm) - 1) <= 1e-10);
    CHECK(neg >= -1e-12);
    CHECK(p.residual <= 1e-12);
    const Domain dom = Domain::ball(Site::origin(2), r);
    CHECK(std::abs(p.lambda - top_real_eigenvalue(stencil_matrix(env, dom))) <= 1e-9);
  }
}

TEST_CASE("a priori bounds on random environments") {
  int violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const Environment env = random_env(3, derive_seed(80, k));
    const int r = k % 4;
    const double lam = principal_eigenpair(env, Site::origin(2), r).lambda;
    violations += !(max_over_ball(env, Site::origin(2), r, true) <= lam + 1e-12);
    violations += !(lam <= max_over_ball(env, Site::origin(2), r, false) + 1e-12);
  }
  CHECK(violations == 0);
}

TEST_CASE("two-radius eigenvalues") {
  for (int k = 0; k < 20; ++k) {
    const Environment env = random_env(3, derive_seed(90, k));
    const double full = principal_eigenpair(env, Site::origin(2), 3).lambda;
    CHECK(std::abs(eigenvalue_two_radius(env, Site::origin(2), 3, 3) - full) <= 1e-10);
  }
  for (int k = 0; k < 20; ++k) {
    Environment env = random_env(3, derive_seed(91, k));
    for (double& x : env.xi_mut()) x = std::abs(x);
    CHECK(eigenvalue_two_radius(env, Site::origin(2), 1, 3) <= eigenvalue_two_radius(env, Site::origin(2), 3, 3) + 1e-12);
  }
  // r1 = 0, r2 = 1, constant traps, only the center keeps its potential
  Environment env = random_env(1, 92);
  for (double& s : env.sigma_mut()) s = 1.0;
  set_site(env, Site::origin(2), 5.0, 1.0);
  Environment centre_only = env;
  for (const Site& y : l1_ball(Site::origin(2), 1).members)
    if (!y.is_origin()) centre_only.xi_mut()[centre_only.index(y)] = 0.0;
  const double ref = top_real_eigenvalue(stencil_matrix(centre_only, Domain::ball(Site::origin(2), 1)));
  CHECK(std::abs(eigenvalue_two_radius(env, Site::origin(2), 0, 1) - ref) <= 1e-10);
}

TEST_CASE("loop expansion") {
  const Environment single = random_env(0, 4);
  CHECK(path_expansion_eigenvalue(single, Site::origin(2), 0) == single.xi()[0] - 1.0 / single.sigma()[0]);
  double worst = 0;
  int above = 0;
  for (int k = 0; k < 200; ++k) {
    const int r = 1 + k % 2;
    const Environment env = separated_environment(r, 3.0, 2.5, derive_seed(100, k));
    const double lam = principal_eigenpair(env, Site::origin(2), r).lambda;
    worst = std::max(worst, std::abs(path_expansion_eigenvalue(env, Site::origin(2), r) - lam));
    above += !(lam <= env.xi_at(Site::origin(2)) - 0.5 / env.sigma_at(Site::origin(2)));
  }
  CHECK(worst <= 1e-8);
  CHECK(above == 0);
  const Environment flat = random_env(2, 101);
  Environment bad = flat;
  for (double& x : bad.xi_mut()) x = 1.0;
  CHECK_THROWS_AS(path_expansion_eigenvalue(bad, Site::origin(2), 2), SeparationError);
}

TEST_CASE("eigenfunction identity") {
  const Environment single = random_env(0, 5);
  CHECK(verify_eigenfunction_fk(single, Site::origin(2), 0, principal_eigenpair(single, Site::origin(2), 0)) == 0.0);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const Environment env = separated_environment(2, 3.0, 2.5, derive_seed(110, k));
    worst = std::max(worst, verify_eigenfunction_fk(env, Site::origin(2), 2, principal_eigenpair(env, Site::origin(2), 2)));
  }
  CHECK(worst <= 1e-8);
  Environment pam = separated_environment(2, 3.0, 2.5, 111);
  for (double& s : pam.sigma_mut()) s = 1.0;
  CHECK(verify_eigenfunction_fk(pam, Site::origin(2), 2, principal_eigenpair(pam, Site::origin(2), 2)) <= 1e-8);
}

TEST_CASE("domain monotonicity") {
  int bad = 0;
  for (int k = 0; k < 500; ++k) {
    const Environment env = random_env(3, derive_seed(120, k));
    const int r = k % 3;
    bad += !(principal_eigenpair(env, Site::origin(2), r).lambda <=
             principal_eigenpair(env, Site::origin(2), r + 1).lambda + 1e-12);
  }
  CHECK(bad == 0);
}

TEST_CASE("perturbation monotonicity") {
  int bad_xi = 0, bad_sigma = 0, sigma_cases = 0;
  for (int k = 0; k < 20; ++k) {
    const Environment env = random_env(2, derive_seed(130, k));
    const EigenPair p = principal_eigenpair(env, Site::origin(2), 2);
    const auto peak = static_cast<std::size_t>(std::max_element(p.phi.begin(), p.phi.end()) - p.phi.begin());
    const Domain dom = Domain::ball(Site::origin(2), 2);
    Rng rng(derive_seed(131, k));
    const Site y = dom.site(rng.below(static_cast<std::uint32_t>(dom.size())));
    Environment up = env;
    up.xi_mut()[up.index(y)] += 0.1;
    bad_xi += principal_eigenpair(up, Site::origin(2), 2).lambda < p.lambda - 1e-12;
    if (y != dom.site(peak) && p.lambda > env.xi_at(y)) {
      ++sigma_cases;
      Environment heavy = env;
      heavy.sigma_mut()[heavy.index(y)] *= 3.0;
      bad_sigma += principal_eigenpair(heavy, Site::origin(2), 2).lambda > p.lambda + 1e-12;
    }
  }
  CHECK(bad_xi == 0);
  CHECK(bad_sigma == 0);
  CHECK(sigma_cases > 0);
}

TEST_CASE("degenerate top eigenvalue is reported") {
  // two decoupled identical sites: a domain of two non-adjacent sites
  Environment env = fixed_env(2, 0.0, 1.0);
  const Domain dom(std::vector<Site>{Site{-1, 0}, Site{1, 0}});
  CHECK_THROWS_AS(principal_eigenpair(assemble(env, dom, false)), DegenerateEigenvalueError);
}

}
