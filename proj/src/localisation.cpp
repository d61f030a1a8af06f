#include "bamlab/localisation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bamlab/parallel.hpp"
#include "bamlab/spectral.hpp"

namespace bam {

std::vector<Site> high_exceedances(const Environment& env, double L, double eta) {
  if (!(eta > 0)) throw std::invalid_argument("high_exceedances: eta must be positive");
  const double level = scale_a(L, env.potential(), env.dim()) - eta;
  std::vector<Site> out;
  for (std::size_t i = 0; i < env.size(); ++i) {
    const Site& x = env.box().members[i];
    if (x.norm() <= L && env.xi()[i] > level) out.push_back(x);
  }
  return out;
}

double default_delta(double delta_sigma) { return std::min(0.5, delta_sigma / 2); }

double PsiMap::value_at(const Site& z) const {
  auto it = std::lower_bound(sites.begin(), sites.end(), z);
  if (it == sites.end() || *it != z) return -std::numeric_limits<double>::infinity();
  return values[static_cast<std::size_t>(it - sites.begin())];
}

double penalty(double t, double c, const Site& z) { return std::max(ln3(t) - c, 0.0) * z.norm() / t; }

namespace {

template <class Solve>
PsiMap build_psi(const Environment& env, const ScaleSet& scales, double c, double delta, unsigned workers,
                 Solve&& solve) {
  PsiMap psi;
  psi.t = scales.t;
  psi.c = c;
  psi.delta = delta;
  psi.sites = high_exceedances(env, scales.L_t, delta);  // already lexicographic
  psi.lambda.resize(psi.sites.size());
  psi.values.resize(psi.sites.size());
  parallel_for(psi.sites.size(), workers, [&](std::size_t i) {
    psi.lambda[i] = solve(psi.sites[i]);
    psi.values[i] = psi.lambda[i] - penalty(scales.t, c, psi.sites[i]);
  });
  return psi;
}

}  // namespace

PsiMap psi_functional(const Environment& env, const ScaleSet& scales, double c, double delta, unsigned workers,
                      int radius) {
  const int r = radius >= 0 ? radius : scales.R_L;
  PsiMap psi = build_psi(env, scales, c, delta, workers,
                         [&](const Site& z) { return principal_eigenpair(env, z, r).lambda; });
  psi.radius = r;
  return psi;
}

PsiMap psi_local(const Environment& env, const ScaleSet& scales, int rho_xi, int rho_sigma, double delta,
                 unsigned workers) {
  PsiMap psi = build_psi(env, scales, 0.0, delta, workers,
                         [&](const Site& z) { return eigenvalue_two_radius(env, z, rho_xi, rho_sigma); });
  psi.radius = rho_sigma;
  psi.rho_xi = rho_xi;
  return psi;
}

PsiMap psi_local(const Environment& env, const ScaleSet& scales, const InfluenceData& influence, double delta,
                 unsigned workers) {
  return psi_local(env, scales, influence.rho_xi, influence.rho_sigma, delta, workers);
}

std::vector<std::pair<Site, double>> top_k(const PsiMap& psi, int k) {
  if (k < 1) throw std::invalid_argument("top_k: k must be positive");
  std::vector<std::pair<Site, double>> all;
  for (std::size_t i = 0; i < psi.sites.size(); ++i)
    if (std::isfinite(psi.values[i])) all.emplace_back(psi.sites[i], psi.values[i]);
  if (all.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("top_k: fewer than k finite values");
  auto before = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first > b.first;
  };
  std::partial_sort(all.begin(), all.begin() + k, all.end(), before);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

void write_psi_csv(const PsiMap& psi, std::ostream& os) {
  const int d = psi.sites.empty() ? 0 : psi.sites.front().dim();
  for (int i = 0; i < d; ++i) os << 'x' << i << ',';
  os << "lambda,psi,in_Pi\n";
  char buf[80];
  for (std::size_t i = 0; i < psi.sites.size(); ++i) {
    for (int k = 0; k < d; ++k) os << psi.sites[i][k] << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,1", psi.lambda[i], psi.values[i]);
    os << buf << '\n';
  }
}

LocalProfile local_profile(const Environment& env, const ScaleSet& scales, const InfluenceData& influence,
                           const Site& center, int m) {
  if (m < influence.rho_sigma) throw std::invalid_argument("local_profile: need m >= rho_sigma");
  LocalProfile p;
  p.center = center;
  p.m = m;
  const double f = scales.f_t, g = scales.g_t, ds = influence.delta_sigma;
  p.sigma_center = env.sigma_at(center);
  p.sigma_scaled = p.sigma_center / scales.q_sigma;
  bool ok_xi = true;
  bool ok_sigma = p.sigma_center > scales.q_sigma * (1 - f) && p.sigma_center < scales.q_sigma * (1 + f);
  for (const Site& y : l1_ball(Site::origin(center.dim()), m).members) {
    if (y.is_origin()) continue;
    const double xi = env.xi_at(center + y);
    const double sg = env.sigma_at(center + y);
    const bool pinned = y.norm() <= influence.rho_xi && !influence.in_F_xi(y);
    const double q = scales.q_xi_at(y);
    p.offsets.push_back(y);
    p.xi_raw.push_back(xi);
    p.xi_shifted.push_back(xi - q);
    p.pinned_xi.push_back(pinned);
    p.sigma_raw.push_back(sg);
    ok_xi = ok_xi && (pinned ? std::abs(xi - q) < f : std::abs(xi) < g);
    const bool pinned_sigma = y.norm() <= influence.rho_sigma && !influence.in_F_sigma(y);
    ok_sigma = ok_sigma && (pinned_sigma ? (sg > ds && sg < ds + f) : (sg > ds + f && sg < g));
  }
  p.in_S_xi = ok_xi;
  p.in_S_sigma = ok_sigma;
  return p;
}

}  // namespace bam
