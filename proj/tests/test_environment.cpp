#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bamlab/environment.hpp"
#include "bamlab/rng.hpp"
#include "bamlab/scales.hpp"

using namespace bam;

TEST_SUITE("environment") {

TEST_CASE("double-exponential tail at zero") {
  const auto pot = PotentialDistribution::double_exponential(1.0);
  Rng rng(11);
  const int n = 1'000'000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += pot.sample(rng.uniform()) > 0;
  const double p = std::exp(-1.0);
  CHECK(pot.tail(0.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(std::abs(hits / double(n) - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("log-Weibull tail at e") {
  const auto trap = TrapDistribution::log_weibull(2.0);
  Rng rng(12);
  const int n = 1'000'000;
  int hits = 0;
  double lowest = 1e300;
  for (int i = 0; i < n; ++i) {
    const double s = trap.sample(rng.uniform());
    hits += s > std::numbers::e;
    lowest = std::min(lowest, s);
  }
  const double p = std::exp(-1.0);
  CHECK(std::abs(hits / double(n) - p) < 3 * std::sqrt(p * (1 - p) / n));
  CHECK(lowest >= trap.delta());
  CHECK(trap.tail(std::numbers::e) == doctest::Approx(p));
}

TEST_CASE("trap families respect their essential infimum") {
  Rng rng(13);
  for (const auto& trap : {TrapDistribution::log_weibull(3.0), TrapDistribution::pareto(1.5),
                           TrapDistribution::weibull(0.7), TrapDistribution::constant(2.0)})
    for (int i = 0; i < 100000; ++i) REQUIRE(trap.sample(rng.uniform()) >= trap.delta());
  CHECK_THROWS_AS(TrapDistribution::log_weibull(1.0), std::invalid_argument);
  CHECK_THROWS_AS(TrapDistribution::log_weibull(0.5), std::invalid_argument);
}

TEST_CASE("sampling is deterministic in the seed") {
  const Ball box = l1_ball(Site::origin(2), 6);
  const auto pot = PotentialDistribution::double_exponential(1.0);
  const auto trap = TrapDistribution::log_weibull(3.0);
  const Environment a = sample_environment(box, pot, trap, 99);
  const Environment b = sample_environment(box, pot, trap, 99);
  const Environment c = sample_environment(box, pot, trap, 100);
  CHECK(a.xi() == b.xi());
  CHECK(a.sigma() == b.sigma());
  CHECK(a.xi() != c.xi());
}

TEST_CASE("F has slope 1/rho for the double exponential") {
  for (double rho : {0.5, 1.0, 2.0}) {
    const auto pot = PotentialDistribution::double_exponential(rho);
    for (double x : {-3.0, 0.0, 1.7, 6.0}) {
      CHECK(std::exp(-std::exp(pot.F(x))) == doctest::Approx(pot.tail(x)).epsilon(1e-14));
      const double h = 1e-5;
      const double fd = (pot.F(x + h) - pot.F(x - h)) / (2 * h);
      CHECK(std::abs(fd - 1 / rho) < 1e-8);
    }
  }
}

TEST_CASE("exceedance frequency at a_L") {
  const double L = 100;
  const auto pot = PotentialDistribution::double_exponential(1.0);
  const Environment env = sample_environment(l1_ball(Site::origin(2), 100), pot, TrapDistribution::log_weibull(3.0), 4);
  const double a = scale_a(L, pot, 2);
  int count = 0;
  for (double x : env.xi()) count += x > a;
  const double n = static_cast<double>(env.size()), p = 1 / (L * L);
  CHECK(std::abs(count - n * p) <= 4 * std::sqrt(n * p * (1 - p)));
}

TEST_CASE("scale a_t") {
  const auto de1 = PotentialDistribution::double_exponential(1.0);
  const auto de2 = PotentialDistribution::double_exponential(2.0);
  const double t = std::exp(std::numbers::e);
  // rho ln(d ln t) with d ln t = 2e
  CHECK(scale_a(t, de1, 2) == doctest::Approx(1.6931471805599454).epsilon(1e-12));
  CHECK(scale_a(t, de2, 2) == doctest::Approx(3.3862943611198908).epsilon(1e-12));
  CHECK(std::abs(scale_a(1e12, de1, 2) / ln2(1e12) - 1.0) < 0.25);
  CHECK_THROWS_AS(scale_a(1.2, de1, 2), std::domain_error);
  // a general-F table reproducing the double exponential gives the same scale
  std::vector<double> r, f;
  for (int i = -20; i <= 20; ++i) {
    r.push_back(i);
    f.push_back(i);
  }
  CHECK(scale_a(t, PotentialDistribution::general_f(r, f), 2) == doctest::Approx(1.6931471805599454).epsilon(1e-9));
}

TEST_CASE("scale set at t = e^{e^2}") {
  const double t = std::exp(std::exp(2.0));
  const ScaleSet s = build_scales(t, PotentialDistribution::double_exponential(1.0), TrapDistribution::log_weibull(2.0), 2);
  CHECK(s.d_t == doctest::Approx(1 / (2 * std::exp(2.0))).epsilon(1e-12));
  CHECK(s.d_t == doctest::Approx(0.067667641618306).epsilon(1e-10));
  CHECK(s.L_t == doctest::Approx(2 * t).epsilon(1e-12));
  CHECK(s.L_t == doctest::Approx(3236.4).epsilon(1e-4));
  CHECK(s.r_t == doctest::Approx(t * s.d_t / std::log(2.0)).epsilon(1e-12));
  CHECK(s.r_t == doctest::Approx(158.0).epsilon(1e-3));
  CHECK(s.q_sigma == doctest::Approx(std::exp(2.0) / 2).epsilon(1e-12));
  CHECK(s.a_t == doctest::Approx(std::log(2 * std::exp(2.0))).epsilon(1e-12));
  CHECK(s.R_L >= 1);
  CHECK(s.L_star > s.L_t);
}

TEST_CASE("mesoscopic radius is monotone and at least one") {
  int prev = 0;
  for (double L = 1.5; L < 1e8; L *= 1.3) {
    const int r = mesoscopic_radius(L, 2);
    CHECK(r >= 1);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("auxiliary h satisfies its defining inequality") {
  const auto pot = PotentialDistribution::double_exponential(1.0);
  for (double mu : {2.0, 3.0, 5.0}) {
    const auto trap = TrapDistribution::log_weibull(mu);
    for (double t : {20.0, 1e3, 1e8, 1e30, 1e100}) {
      const double a = scale_a(t, pot, 2);
      const double h = auxiliary_h(a, pot, trap);
      CHECK(h > 0);
      CHECK(h <= 1);
      if (h < 1) CHECK(h >= 10 * h_condition(h, a, pot, trap));
    }
  }
}

TEST_CASE("potential truncation") {
  const Ball box = l1_ball(Site::origin(2), 1);
  std::vector<double> xi(box.size(), 10.0), sigma(box.size(), 1.0);
  const Environment env(box, xi, sigma, PotentialDistribution::double_exponential(1.0), TrapDistribution::constant(1.0), 0);
  // level chosen so that level - c* + 1/delta = 0 and level - c* = -1
  const Environment tr = truncate_potential_level(env, Site::origin(2), 3.0);
  CHECK(tr.xi_at(Site::origin(2)) == 10.0);
  CHECK(tr.xi_at(Site{1, 0}) == -1.0);
  const Environment lowered = truncate_potential_level(env, Site::origin(2), 6.0);
  CHECK(lowered.xi_at(Site{0, 1}) == 2.0);

  const Environment rnd = sample_environment(l1_ball(Site::origin(2), 4), PotentialDistribution::double_exponential(1.0),
                                             TrapDistribution::log_weibull(3.0), 21);
  const Environment once = truncate_potential(rnd, Site{1, 1}, 50);
  const Environment twice = truncate_potential(once, Site{1, 1}, 50);
  CHECK(once.xi() == twice.xi());
  CHECK(once.sigma() == rnd.sigma());
}

}
