#include "bamlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bamlab/evolution.hpp"

namespace bam {

bool InequalityCheck::holds() const { return lhs <= rhs + kInequalitySlack * std::max(1.0, std::abs(rhs)); }

void InequalityTally::add(const InequalityCheck& c) {
  ++checked;
  if (!c.holds()) ++violated;
  if (c.excess() > worst_excess) {
    worst_excess = c.excess();
    worst_name = c.name;
  }
}

std::vector<InequalityCheck> check_a_priori(const Environment& env, const Site& z, int r, double lambda) {
  double lo = -1e300, hi = -1e300;
  for (const Site& y : l1_ball(z, r).members) {
    lo = std::max(lo, env.xi_at(y) - 1.0 / env.sigma_at(y));
    hi = std::max(hi, env.xi_at(y));
  }
  return {{"a_priori_lower", lo, lambda}, {"a_priori_upper", lambda, hi}};
}

InequalityCheck check_cluster_expansion(const Environment& env, const Site& z, int r, double lambda,
                                        double gamma) {
  double inv_sigma = 0;
  const Ball b = l1_ball(z, r);
  for (const Site& y : b.members) inv_sigma = std::max(inv_sigma, 1.0 / env.sigma_at(y));
  const double lhs = stopped_exit_mass(env, z, r, gamma);
  return {"cluster_expansion", lhs, 1.0 + inv_sigma * static_cast<double>(b.size()) / (gamma - lambda)};
}

LocalSolution local_solution(const Environment& env, const Site& z, int r, double t, double rtol) {
  auto dom = std::make_shared<const Domain>(Domain::ball(z, r));
  EvolveOptions opt;
  opt.rtol = rtol;
  opt.atol = rtol * 1e-3;
  const MassFunction u = evolve(env, dom, t, opt, z);
  return {u.log_mass_offset, u.weights, *dom->index_of(z)};
}

namespace {

double weighted_norm2(const EigenPair& pair, const std::vector<double>& sigma) {
  double s = 0;
  for (std::size_t i = 0; i < pair.phi.size(); ++i) s += pair.phi[i] * pair.phi[i] / sigma[i];
  return s;
}

}  // namespace

std::vector<InequalityCheck> check_mass_bounds(const Environment& env, const Site& z, int r, double t,
                                               const EigenPair& pair, const LocalSolution& sol) {
  const Domain dom = Domain::ball(z, r);
  const auto sigma = env.sigma_on(dom);
  const std::size_t c = sol.center;
  const double pz = pair.phi[c];
  const double lower = pz * pz / sigma[c] / weighted_norm2(pair, sigma);
  const double return_mass = std::exp(sol.log_total - t * pair.lambda) * sol.weights[c];
  double l1 = 0;
  for (double v : pair.phi) l1 += v;
  const double total = std::exp(sol.log_total - t * pair.lambda);
  return {{"mass_lower", lower, return_mass}, {"mass_upper", total, l1 / pz}};
}

InequalityCheck check_comparison(const Environment& env, const Site& z, int r, const EigenPair& pair,
                                 const LocalSolution& sol) {
  const Domain dom = Domain::ball(z, r);
  const auto sigma = env.sigma_on(dom);
  const std::size_t c = sol.center;
  const double pz = pair.phi[c];
  const double k = sigma[c] * weighted_norm2(pair, sigma) / (pz * pz * pz);
  InequalityCheck worst{"comparison", 0, 0};
  double worst_margin = -1e300;
  for (std::size_t y = 0; y < dom.size(); ++y) {
    const double lhs = sol.weights[y], rhs = k * pair.phi[y];
    const double margin = (lhs - rhs) / std::max(1.0, std::abs(rhs));
    if (margin > worst_margin) {
      worst_margin = margin;
      worst.lhs = lhs;
      worst.rhs = rhs;
    }
  }
  return worst;
}

std::vector<InequalityCheck> inequality_suite(const Environment& env, const Site& z, int r,
                                              const std::vector<double>& times, double gamma_offset) {
  const EigenPair pair = principal_eigenpair(env, z, r);
  std::vector<InequalityCheck> out = check_a_priori(env, z, r, pair.lambda);
  out.push_back(check_cluster_expansion(env, z, r, pair.lambda, pair.lambda + gamma_offset));
  for (double t : times) {
    const LocalSolution sol = local_solution(env, z, r, t);
    for (auto& c : check_mass_bounds(env, z, r, t, pair, sol)) out.push_back(std::move(c));
    out.push_back(check_comparison(env, z, r, pair, sol));
  }
  return out;
}

}  // namespace bam
