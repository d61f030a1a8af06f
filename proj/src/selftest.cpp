#include "bamlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "bamlab/evolution.hpp"
#include "bamlab/inequalities.hpp"
#include "bamlab/limitlaw.hpp"
#include "bamlab/report.hpp"
#include "bamlab/spectral.hpp"
#include "bamlab/walker.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bam {

Environment separated_environment(int r, double mu, double gap, std::uint64_t seed) {
  Environment env = sample_environment(l1_ball(Site::origin(2), r), PotentialDistribution::double_exponential(1.0),
                                       TrapDistribution::log_weibull(mu), seed);
  const std::size_t c = env.index(Site::origin(2));
  auto& xi = env.xi_mut();
  double top = -1e300;
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (i != c) top = std::max(top, xi[i]);
  if (xi.size() > 1) xi[c] = std::max(xi[c], top + gap);
  return env;
}

namespace {

std::string num(double x) { return format_number(x); }

}  // namespace

std::vector<SelftestItem> run_selftest(std::uint64_t seed, std::ostream& log) {
  std::vector<SelftestItem> items;
  auto record = [&](std::string name, bool pass, std::string detail) {
    log << (pass ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    items.push_back({std::move(name), pass, std::move(detail)});
  };
  const Site o = Site::origin(2);

  {  // single site
    const Environment env = sample_environment(l1_ball(o, 0), PotentialDistribution::double_exponential(1.0),
                                               TrapDistribution::log_weibull(3.0), seed);
    const double lam = principal_eigenpair(env, o, 0).lambda;
    const double exact = env.xi()[0] - 1.0 / env.sigma()[0];
    record("single_site_eigenvalue", std::abs(lam - exact) <= 1e-12, "diff " + num(lam - exact));
  }
  {  // a priori bounds
    InequalityTally tally;
    for (int k = 0; k < 200; ++k) {
      const Environment env = sample_environment(l1_ball(o, 3), PotentialDistribution::double_exponential(1.0),
                                                 TrapDistribution::log_weibull(3.0), derive_seed(seed, 100 + k));
      const int r = k % 4;
      tally.add(check_a_priori(env, o, r, principal_eigenpair(env, o, r).lambda));
    }
    record("a_priori_bounds", tally.clean(), std::to_string(tally.checked) + " checks");
  }
  {  // loop expansion and eigenfunction identity
    double worst = 0, worst_fk = 0;
    for (int k = 0; k < 50; ++k) {
      const int r = 1 + k % 2;
      const Environment env = separated_environment(r, 3.0, 2.5, derive_seed(seed, 400 + k));
      const EigenPair p = principal_eigenpair(env, o, r);
      worst = std::max(worst, std::abs(path_expansion_eigenvalue(env, o, r) - p.lambda));
      worst_fk = std::max(worst_fk, verify_eigenfunction_fk(env, o, r, p));
    }
    record("loop_expansion_vs_power_iteration", worst <= 1e-8, "max diff " + num(worst));
    record("eigenfunction_fk_identity", worst_fk <= 1e-8, "max mismatch " + num(worst_fk));
  }
  {  // single-site evolution
    const Environment env = sample_environment(l1_ball(o, 0), PotentialDistribution::double_exponential(1.0),
                                               TrapDistribution::log_weibull(3.0), seed);
    const MassFunction u = evolve(env, env.domain(), 3.0);
    const double exact = 3.0 * (env.xi()[0] - 1.0 / env.sigma()[0]);
    record("single_site_evolution", std::abs(u.log_mass_offset - exact) <= 1e-8,
           "log diff " + num(u.log_mass_offset - exact));
  }
  {  // finite-t inequalities
    InequalityTally tally;
    for (int k = 0; k < 20; ++k) {
      const Environment env = separated_environment(2, 3.0, 0.5, derive_seed(seed, 700 + k));
      tally.add(inequality_suite(env, o, 2, {1.0, 5.0}));
    }
    record("inequality_suite", tally.clean(),
           std::to_string(tally.checked) + " checks, worst excess " + num(tally.worst_excess));
  }
  {  // chemical distance on an all-open mask
    const Domain region = Domain::ball(o, 12);
    const std::vector<char> open(region.size(), 1);
    Rng rng(derive_seed(seed, 900));
    bool ok = true;
    for (int k = 0; k < 100; ++k) {
      const Site u = region.site(rng.below(static_cast<std::uint32_t>(region.size())));
      const Site v = region.site(rng.below(static_cast<std::uint32_t>(region.size())));
      const auto dist = chemical_distance(region, open, u, v, false);
      ok = ok && dist && *dist == l1_distance(u, v);
    }
    record("chemical_distance_all_open", ok, "100 pairs");
  }
  {  // order statistics density, k = 1
    const double inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double psi) { return std::exp(-psi - 4.0 * std::exp(-psi)); }, -10.0, 60.0, 20, 1e-14);
    const double total = inner * 4.0;  // integral of e^{-|z|} over R^2
    record("order_stat_density_mass", std::abs(total - 1) <= 1e-6, "integral " + num(total));
  }
  {  // report round trip
    Table t({"a", "b"});
    t.row().push(0.1).push(-2.5e-300);
    t.row().push(1.0 / 3).push(std::numeric_limits<double>::infinity());
    std::stringstream ss;
    t.write_csv(ss);
    const Table back = Table::read_csv(ss);
    bool ok = back == t && back.number(1, "a") == 1.0 / 3 && back.number(0, "b") == -2.5e-300;
    record("csv_round_trip", ok, "");
  }
  return items;
}

}  // namespace bam
