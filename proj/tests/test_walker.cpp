#include <doctest.h>

#include <array>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "bamlab/scales.hpp"
#include "bamlab/walker.hpp"
#include "helpers.hpp"

using namespace bam;
using namespace testing;

TEST_SUITE("walker") {

TEST_CASE("holding times and neighbour choice") {
  // radius-0 box: every walk is killed at its first jump
  Environment env = fixed_env(0, 0.0, 3.7);
  Rng rng(400);
  const int n = 100000;
  double sum = 0, sum2 = 0;
  std::array<int, 4> counts{};
  for (int k = 0; k < n; ++k) {
    const Trajectory tr = simulate_btm(env, Site::origin(2), 1e9, rng);
    REQUIRE(tr.killed);
    REQUIRE(tr.sites.size() == 2);
    const double h = tr.jump_times[0];
    sum += h;
    sum2 += h * h;
    const Site step = tr.sites[1];
    counts[step[0] == 1 ? 0 : step[0] == -1 ? 1 : step[1] == 1 ? 2 : 3]++;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 3.7) <= 3 * se);
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
  const boost::math::chi_squared dist(3);
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 1e-3);
}

TEST_CASE("constant traps give a Poisson jump count") {
  const Environment env = fixed_env(30, 0.0, 1.0);
  Rng rng(401);
  const int n = 50000;
  const double t = 3.0;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    const Trajectory tr = simulate_btm(env, Site::origin(2), t, rng);
    const double j = static_cast<double>(tr.jump_times.size());
    sum += j;
    sum2 += j * j;
    for (std::size_t i = 0; i + 1 < tr.sites.size(); ++i) REQUIRE(l1_distance(tr.sites[i], tr.sites[i + 1]) == 1);
  }
  const double mean = sum / n, var = sum2 / n - mean * mean;
  CHECK(std::abs(mean - t) <= 3 * std::sqrt(t / n));
  // variance of the sample variance of Poisson(t) is about (t + 2t^2)/n
  CHECK(std::abs(var - t) <= 3 * std::sqrt((t + 2 * t * t) / n));
}

TEST_CASE("trajectory csv") {
  const Environment env = fixed_env(5, 0.0, 1.0);
  Rng rng(402);
  const Trajectory tr = simulate_btm(env, Site::origin(2), 4.0, rng);
  std::ostringstream os;
  write_trajectory_csv(tr, os);
  const std::string s = os.str();
  CHECK(s.rfind("jump,time,x0,x1\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(tr.sites.size() + 1));
}

TEST_CASE("Feynman-Kac estimator: trivial cases") {
  const Environment env = random_env(3, 410);
  Rng rng(411);
  const McEstimate at0 = fk_estimate(env, 0.0, Site::origin(2), 1000, rng);
  CHECK(at0.value == 1.0);
  CHECK(fk_estimate(env, 0.0, Site{1, 0}, 1000, rng).value == 0.0);
  CHECK_THROWS_AS(fk_estimate(env, 1.0, Site::origin(2), 999, rng), std::invalid_argument);

  const Environment single = random_env(0, 412);
  const double t = 1.5;
  const McEstimate est = fk_estimate(single, t, Site::origin(2), 100000, rng);
  const double exact = std::exp(t * (single.xi()[0] - 1.0 / single.sigma()[0]));
  CHECK(std::abs(est.value - exact) <= 3 * est.std_error);
}

TEST_CASE("estimator error shrinks like the inverse square root") {
  const Environment env = random_env(4, 420);
  Rng rng(421);
  const McEstimate a = fk_estimate(env, 1.0, Site::origin(2), 4000, rng);
  const McEstimate b = fk_estimate(env, 1.0, Site::origin(2), 64000, rng);
  const double ratio = a.std_error / b.std_error;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.3);
}

TEST_CASE("path weight") {
  Environment env = fixed_env(3, 0.0, 1.0);
  CHECK(path_weight(Path{Site::origin(2)}, 1.0, env) == 1.0);
  CHECK(path_weight(Path{Site{0, 0}, Site{1, 0}}, 1.0, env) == 0.125);
  CHECK_THROWS_AS(path_weight(Path{Site{0, 0}, Site{1, 0}}, -1.0, env), std::invalid_argument);
  CHECK_THROWS_AS(path_weight(Path{Site{0, 0}, Site{2, 0}}, 1.0, env), std::invalid_argument);

  const Environment rnd = random_env(3, 430);
  const Path p{Site{0, 0}, Site{0, 1}, Site{1, 1}, Site{1, 2}};
  double top = -1e300;
  for (const Site& s : p) top = std::max(top, rnd.xi_at(s));
  const double g = top + 0.3;
  CHECK(path_weight(p, g + 0.1, rnd) < path_weight(p, g, rnd));
  Environment heavier = rnd;
  heavier.sigma_mut()[heavier.index(Site{0, 1})] *= 2;
  CHECK(path_weight(p, g, heavier) < path_weight(p, g, rnd));

  Rng rng(431);
  const McEstimate est = path_weight_estimate(p, g, rnd, 1000000, rng);
  CHECK(std::abs(est.value - path_weight(p, g, rnd)) <= 3 * est.std_error);
}

TEST_CASE("chemical distance") {
  const Domain region = Domain::ball(Site::origin(2), 6);
  std::vector<char> open(region.size(), 1);
  CHECK(*chemical_distance(region, open, Site::origin(2), Site{2, 0}, false) == 2);
  open[*region.index_of(Site{1, 0})] = 0;
  CHECK(*chemical_distance(region, open, Site::origin(2), Site{2, 0}, false) == 4);

  std::vector<char> ring(region.size(), 1);
  for (const Site& s : l1_ball(Site{3, 0}, 1).members) ring[*region.index_of(s)] = 0;
  CHECK_FALSE(chemical_distance(region, ring, Site::origin(2), Site{3, 0}, false).has_value());
  std::vector<char> only_v(region.size(), 1);
  only_v[*region.index_of(Site{3, 0})] = 0;
  CHECK_FALSE(chemical_distance(region, only_v, Site::origin(2), Site{3, 0}, false).has_value());
  CHECK(*chemical_distance(region, only_v, Site::origin(2), Site{3, 0}, true) == 3);

  Rng rng(440);
  const Domain big = Domain::ball(Site::origin(2), 15);
  const std::vector<char> all(big.size(), 1);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const Site u = big.site(rng.below(static_cast<std::uint32_t>(big.size())));
    const Site v = big.site(rng.below(static_cast<std::uint32_t>(big.size())));
    const auto dist = chemical_distance(big, all, u, v, false);
    bad += !dist || *dist != l1_distance(u, v);
  }
  CHECK(bad == 0);

  // random masks never beat the l1 distance
  for (int k = 0; k < 200; ++k) {
    std::vector<char> mask(big.size());
    for (auto& m : mask) m = rng.uniform() < 0.7;
    const Site v = big.site(rng.below(static_cast<std::uint32_t>(big.size())));
    mask[*big.index_of(Site::origin(2))] = 1;
    const auto dist = chemical_distance(big, mask, Site::origin(2), v, true);
    if (dist) CHECK(*dist >= v.norm());
  }
}

TEST_CASE("good paths") {
  const double t = std::exp(std::exp(2.0));
  const ScaleSet s = build_scales(t, PotentialDistribution::double_exponential(1.0), TrapDistribution::log_weibull(3.0), 2);
  Environment benign = fixed_env(12, 0.0, 1.0);
  const auto p = find_good_path(benign, s, Site{3, 2});
  REQUIRE(p.has_value());
  CHECK(p->size() == 6);
  CHECK(p->front() == Site::origin(2));
  CHECK(p->back() == Site{3, 2});

  Environment blocked = benign;
  for (const Site& x : l1_sphere(Site::origin(2), 2)) blocked.xi_mut()[blocked.index(x)] = -1e6;
  CHECK_FALSE(find_good_path(blocked, s, Site{5, 0}).has_value());
  CHECK_THROWS_AS(find_good_path(benign, s, Site::origin(2)), std::invalid_argument);
}

}
