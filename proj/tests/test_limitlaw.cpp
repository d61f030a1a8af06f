#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bamlab/influence.hpp"
#include "bamlab/limitlaw.hpp"
#include "bamlab/stats.hpp"
#include "helpers.hpp"

using namespace bam;

TEST_SUITE("limitlaw") {

TEST_CASE("Laplace density and sampler") {
  const std::vector<double> zero{0.0, 0.0};
  CHECK(laplace_density(zero) == 0.25);
  const std::vector<double> a{1.3, -0.4}, b{-1.3, 0.4};
  CHECK(laplace_density(a) == laplace_density(b));
  Rng rng(500);
  const int n = 1000000;
  double s = 0, s2 = 0;
  for (int k = 0; k < n; ++k) {
    const double x = laplace_sample(2, rng)[0];
    s += x;
    s2 += x * x;
  }
  const double mean = s / n, var = s2 / n;
  CHECK(std::abs(mean) <= 3 * std::sqrt(2.0 / n));
  // E x^4 = 24
  CHECK(std::abs(var - 2) <= 3 * std::sqrt((24.0 - 4.0) / n));
  CHECK(laplace_cdf(0.0) == 0.5);
}

TEST_CASE("order statistics density") {
  const std::vector<std::vector<double>> z0{{0.0, 0.0}};
  CHECK(order_stat_density(1, z0, {0.0}, 2) == doctest::Approx(0.01831563888873418).epsilon(1e-12));
  const std::vector<std::vector<double>> z2{{0.0, 0.0}, {1.0, 1.0}};
  CHECK(order_stat_density(2, z2, {0.0, 1.0}, 2) == 0.0);
  CHECK(order_stat_density(2, z2, {1.0, 0.0}, 2) > 0.0);

  // k = 1: quadrature over psi times the l1 exponential mass 4 in d = 2
  const double inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double psi) { return order_stat_density(1, {{0.0, 0.0}}, {psi}, 2); }, -10.0, 60.0, 20, 1e-14);
  CHECK(std::abs(inner * 4.0 - 1.0) <= 1e-6);

  // k = 2, d = 1: importance sampling with z ~ Laplace and psi_1 ~ Gumbel(shift ln 2), psi_2 ~ psi_1 - Exp(1)
  Rng rng(501);
  const int n = 400000;
  double acc = 0;
  for (int k = 0; k < n; ++k) {
    const double z1 = laplace_sample(1, rng)[0], z2 = laplace_sample(1, rng)[0];
    const double g = std::log(2.0) - std::log(rng.exponential());
    const double e = rng.exponential();
    const double p1 = g, p2 = g - e;
    const double q = 0.5 * std::exp(-std::abs(z1)) * 0.5 * std::exp(-std::abs(z2)) *
                     2.0 * std::exp(-p1 - 2.0 * std::exp(-p1)) * std::exp(-e);
    acc += order_stat_density(2, {{z1}, {z2}}, {p1, p2}, 1) / q;
  }
  CHECK(std::abs(acc / n - 1.0) < 0.01);
}

TEST_CASE("order statistics sampler") {
  Rng rng(502);
  std::vector<double> top;
  int bad_order = 0;
  for (int k = 0; k < 100000; ++k) {
    const OrderStatSample s = sample_order_stats(3, 2, rng);
    REQUIRE(s.psi.size() == 3);
    REQUIRE(s.z.size() == 3);
    bad_order += !(s.psi[0] > s.psi[1] && s.psi[1] > s.psi[2]);
    top.push_back(s.psi[0]);
  }
  CHECK(bad_order == 0);
  CHECK(ks_test(top, [](double x) { return top_order_stat_cdf(x, 2); }).p_value > 1e-3);
  CHECK(top_order_stat_cdf(2 * std::log(2.0), 2) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("sampled (z1, psi1) against the k = 1 density") {
  // bins: 3 bands of |z| in d = 1 times 4 bands of psi
  Rng rng(503);
  const int n = 200000;
  const std::vector<double> zb{0.0, 0.5, 1.5, 60.0};
  const std::vector<double> pb{-5.0, 0.0, 1.0, 2.5, 60.0};
  std::vector<double> obs(12, 0.0), expct(12, 0.0);
  for (int k = 0; k < n; ++k) {
    const OrderStatSample s = sample_order_stats(1, 1, rng);
    const double az = std::abs(s.z[0][0]), p = s.psi[0];
    int i = 0, j = 0;
    while (i < 2 && az >= zb[static_cast<std::size_t>(i) + 1]) ++i;
    while (j < 3 && p >= pb[static_cast<std::size_t>(j) + 1]) ++j;
    obs[static_cast<std::size_t>(i * 4 + j)] += 1;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      const double zmass = std::exp(-zb[static_cast<std::size_t>(i)]) - std::exp(-zb[static_cast<std::size_t>(i) + 1]);
      const double pmass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [](double psi) { return 2.0 * order_stat_density(1, {{0.0}}, {psi}, 1); }, pb[static_cast<std::size_t>(j)],
          pb[static_cast<std::size_t>(j) + 1], 20, 1e-14);
      expct[static_cast<std::size_t>(i * 4 + j)] = n * zmass * pmass;
    }
  CHECK(chi_square_test(obs, expct).p_value > 1e-3);
}

TEST_CASE("tail curve") {
  CHECK(tail_curve(0.0) == 1.0);
  CHECK(tail_curve(1.0) == doctest::Approx(0.36787944117144233));
  for (double s = 0; s <= 5; s += 0.25)
    for (double eps : {0.1, 0.5, 0.9}) CHECK(std::exp(-(1 - eps) * s) >= tail_curve(s));
  const auto v = tail_curve(std::vector<double>{-1.0, 0.0});
  CHECK(v[0] == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("interface densities") {
  const auto pot = PotentialDistribution::double_exponential(1.0);
  const auto trap3 = TrapDistribution::log_weibull(3.0);
  const auto trap2 = TrapDistribution::log_weibull(2.0);
  const InfluenceData inf3 = radii_of_influence(3.0, 1.0, 1.0, 2);
  const InfluenceData inf2 = radii_of_influence(2.0, 1.0, 1.0, 2);

  // off the interface: the base law
  const TiltedDensity base_xi = nu_density(NuKind::Xi, Site{2, 0}, inf3, pot, trap3);
  for (double x = -3; x <= 3; x += 0.5) CHECK(base_xi.pdf(x) == doctest::Approx(pot.pdf(x)).epsilon(1e-6));

  const TiltedDensity nxi = nu_density(NuKind::Xi, Site{1, 0}, inf3, pot, trap3);
  const TiltedDensity nsig = nu_density(NuKind::Sigma, Site{1, 0}, inf2, pot, trap2);
  for (const TiltedDensity* f : {&nxi, &nsig}) {
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [f](double x) { return f->pdf(x); }, f->lower(), f->upper(), 25, 1e-13);
    CHECK(std::abs(mass - 1) <= 1e-6);
  }
  for (double x = -4; x <= 4; x += 0.25) CHECK(nxi.cdf(x) <= pot.cdf(x) + 1e-9);
  for (double x = 1.01; x <= 30; x *= 1.2) CHECK(nsig.cdf(x) >= trap2.cdf(x) - 1e-9);
  // likelihood ratio is monotone: increasing for xi, decreasing for sigma
  double prev = 0;
  for (double x = -3; x <= 3; x += 0.5) {
    const double lr = nxi.pdf(x) / pot.pdf(x);
    CHECK(lr >= prev);
    prev = lr;
  }
  prev = 1e300;
  for (double x = 1.1; x <= 20; x *= 1.3) {
    const double lr = nsig.pdf(x) / trap2.pdf(x);
    CHECK(lr <= prev);
    prev = lr;
  }
}

}
