#include <doctest.h>

#include "bamlab/limitlaw.hpp"
#include "bamlab/rng.hpp"
#include "bamlab/stats.hpp"

using namespace bam;

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> normals(Rng& rng, int n, double shift) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(), v = rng.uniform();
    out.push_back(std::sqrt(-2 * std::log(u)) * std::cos(2 * 3.141592653589793 * v) + shift);
  }
  return out;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("KS under the null") {
  Rng rng(700);
  int accepted = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const KsResult r = ks_test(normals(rng, 200, 0.0), std_normal_cdf);
    CHECK(r.statistic >= 0);
    CHECK(r.statistic <= 1);
    accepted += r.p_value > 1e-3;
  }
  CHECK(accepted >= 990);
}

TEST_CASE("KS power against a shift") {
  Rng rng(701);
  CHECK(ks_test(normals(rng, 10000, 0.1), std_normal_cdf).p_value < 1e-3);
  CHECK(ks_test(normals(rng, 10000, 0.0), laplace_cdf).p_value < 1e-3);
}

TEST_CASE("KS input checks and Kolmogorov tail") {
  CHECK_THROWS(ks_test({}, std_normal_cdf));
  CHECK_THROWS(ks_test(std::vector<double>(5, 0.0), std_normal_cdf));
  CHECK(kolmogorov_q(0.0) == 1.0);
  // Q(1.36) is the classical 5% point
  CHECK(kolmogorov_q(1.358) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_q(3.0) < 1e-6);
}

TEST_CASE("chi-square") {
  const ChiSquareResult exact = chi_square_test({10, 20, 30}, {10, 20, 30});
  CHECK(exact.statistic == 0.0);
  CHECK(exact.dof == 2);
  CHECK(exact.p_value == 1.0);
  const ChiSquareResult off = chi_square_test({30, 20, 10}, {10, 20, 30});
  CHECK(off.statistic == doctest::Approx(40.0 + 0.0 + 400.0 / 30));
  CHECK(off.p_value < 1e-9);
  CHECK(chi_square_test({1, 2, 3, 4}, {2, 2, 3, 3}, 1).dof == 2);
}

TEST_CASE("quantiles") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(quantile({0.0, 10.0}, 0.95) == doctest::Approx(9.5));
  CHECK(quantile({1.0, std::numeric_limits<double>::infinity()}, 1.0) == std::numeric_limits<double>::infinity());
  const auto [m, se] = mean_se({1.0, 2.0, 3.0, 4.0});
  CHECK(m == 2.5);
  CHECK(se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

}
