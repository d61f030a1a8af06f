#include "bamlab/scales.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace bam {

double ln2(double t) { return std::log(std::log(std::max(t, std::numbers::e))); }

double ln3(double t) {
  const double ee = std::exp(std::numbers::e);
  return std::log(std::log(std::log(std::max(t, ee))));
}

double scale_a(double t, const PotentialDistribution& pot, int d) {
  const double target = d * std::log(t);
  if (!(target > 1.0)) throw std::domain_error("scale_a: need d ln t > 1");
  const double lt = std::log(target);  // solve F(a) = ln(d ln t)
  if (pot.F(1.0) >= lt) return 1.0;
  if (pot.kind() == PotentialDistribution::Kind::DoubleExponential) return pot.rho() * lt;
  double lo = 1.0, hi = 2.0;
  while (pot.F(hi) < lt) {
    lo = hi;
    hi *= 2;
    if (hi > 1e300) throw std::domain_error("scale_a: no solution");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pot.F(mid) >= lt ? hi : lo) = mid;
  }
  return hi;
}

int mesoscopic_radius(double L, int d) {
  if (L <= std::numbers::e) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::pow(std::log(L), 0.7 / d))));
}

double gap_scale(double t, double rho, int d) { return rho / (d * std::log(t)); }

double distance_scale(double t, double rho, int d) {
  const double l3 = ln3(t);
  if (l3 <= 0) return std::numeric_limits<double>::infinity();
  return t * gap_scale(t, rho, d) / l3;
}

double macroscopic_scale(double t) { return t * ln2(t); }

double inverse_distance_scale(double L, double rho, int d) {
  // r_s blows up as s decreases to e^e and grows like s / (ln s ln_3 s);
  // locate the minimum on a log grid first.
  auto r = [&](double ls) { return distance_scale(std::exp(ls), rho, d); };
  double best = std::numbers::e + 1e-3, best_r = r(best);
  for (double ls = std::numbers::e + 1e-3; ls < 60; ls += 0.01) {
    if (const double v = r(ls); v < best_r) {
      best = ls;
      best_r = v;
    }
  }
  if (L <= best_r) return std::exp(best);
  double lo = best, hi = best + 1;
  while (r(hi) < L) {
    lo = hi;
    hi += 2 * (hi - best);
    if (hi > 700) throw std::domain_error("inverse_distance_scale: L too large");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (r(mid) >= L ? hi : lo) = mid;
  }
  return std::exp(hi);
}

double profile_kappa(double mu) {
  double k = 0.5 * std::min(mu - 1, 1.0);
  double best = k;  // kappa_0 = kappa~_0
  for (int n = 1; n < 1000; ++n) {
    k = std::min(k / 2, std::max(mu - 2 * n, 0.0) / 2);
    const double kt = std::min(k / 2, std::max(mu - 2 * n - 1, 0.0) / 2);
    if (k > 0) best = std::min(best, k);
    if (kt > 0) best = std::min(best, kt);
    if (k <= 0) break;
  }
  return best;
}

double ScaleSet::q_xi_at(const Site& y) const {
  for (const auto& [s, v] : q_xi)
    if (s == y) return v;
  return 0.0;
}

double h_condition(double h, double a_t, const PotentialDistribution& pot, const TrapDistribution& trap) {
  const double la = std::log(a_t);
  if (!(la > 0)) return std::numeric_limits<double>::infinity();
  return std::max({1.0 / la, trap.tail(std::exp(h * h * la)), pot.cdf(-a_t * h * h)});
}

double auxiliary_h(double a_t, const PotentialDistribution& pot, const TrapDistribution& trap) {
  auto ok = [&](double h) { return h >= 10.0 * h_condition(h, a_t, pot, trap); };
  if (!ok(1.0)) return 1.0;
  // h - 10 RHS(h) is increasing, so the admissible set is an interval [h0, 1].
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double h = k / 1000.0;
    if (ok(h)) {
      double lo = prev, hi = h;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    prev = h;
  }
  return 1.0;
}

ScaleSet build_scales(double t, const PotentialDistribution& pot, const TrapDistribution& trap, int d) {
  if (!(t >= std::exp(std::numbers::e) * (1 - 1e-12))) throw std::domain_error("build_scales: need t >= e^e");
  const double rho = pot.rho();
  if (!std::isfinite(rho)) throw std::domain_error("build_scales: potential must have finite rho");
  ScaleSet s;
  s.t = t;
  s.d = d;
  s.rho = rho;
  s.delta_sigma = trap.delta();
  s.a_t = scale_a(t, pot, d);
  s.d_t = gap_scale(t, rho, d);
  s.r_t = distance_scale(t, rho, d);
  s.L_t = macroscopic_scale(t);
  s.R_L = mesoscopic_radius(s.L_t, d);
  s.L_star = inverse_distance_scale(s.L_t, rho, d);
  s.R_star = mesoscopic_radius(s.L_star, d);
  s.h_t = auxiliary_h(s.a_t, pot, trap);
  s.s_xi = s.a_t * s.h_t * s.h_t;
  s.s_sigma = std::exp(s.h_t * s.h_t * std::log(s.a_t));
  s.h_star = std::sqrt(s.h_t * std::max(trap.tail(s.s_sigma), pot.cdf(-s.s_xi)));
  s.g_t = 10.0 * ln3(t);
  if (trap.kind() == TrapDistribution::Kind::LogWeibull) {
    const double mu = trap.mu();
    const double l2 = ln2(t), l3 = ln3(t);
    s.q_sigma = (1.0 / mu) * (d / rho) * std::log(t) / std::pow(l2, mu - 1);
    s.f_t = std::pow(l2, -profile_kappa(mu) / 2);
    const InfluenceData inf = radii_of_influence(mu, rho, trap.delta(), d);
    for (const Site& y : l1_ball(Site::origin(d), inf.rho_xi).members) {
      if (y.is_origin() || inf.in_F_xi(y)) continue;
      s.q_xi.emplace_back(y, rho * std::log(inf.cbar(y)) + rho * (mu - 1 - 2 * y.norm()) * l3);
    }
  }
  return s;
}

}  // namespace bam
