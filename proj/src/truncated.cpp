#include "bamlab/truncated.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bamlab/operator.hpp"
#include "bamlab/parallel.hpp"
#include "bamlab/rng.hpp"
#include "bamlab/spectral.hpp"

namespace bam {

double truncated_eigenvalue(const Environment& env, const Site& center, int r, double level) {
  return principal_eigenpair(truncate_potential_level(env, center, level), center, r).lambda;
}

double TruncatedSample::kth_largest(std::size_t k) const {
  if (k >= upper.size()) throw std::domain_error("quantile lies below the censoring cutoff");
  return upper[k];
}

std::size_t TruncatedSample::count_above(double x) const {
  if (x < cutoff) throw std::domain_error("count_above: threshold below the censoring cutoff");
  // upper is decreasing
  auto it = std::partition_point(upper.begin(), upper.end(), [x](double v) { return v > x; });
  return static_cast<std::size_t>(it - upper.begin());
}

double truncated_cutoff(const ScaleSet& scales) { return scales.a_t - 1.0 / scales.delta_sigma - 0.5; }

TruncatedSample sample_truncated_eigenvalues(const TruncatedEigenConfig& cfg, const ScaleSet& scales) {
  if (cfg.samples == 0 || cfg.block == 0) throw std::invalid_argument("sample_truncated_eigenvalues: empty budget");
  TruncatedSample out;
  out.t = cfg.t;
  out.d = cfg.d;
  out.radius = cfg.radius >= 0 ? cfg.radius : scales.R_star;
  out.level = std::isnan(cfg.level) ? scale_a(scales.L_star, cfg.pot, cfg.d) : cfg.level;
  out.cutoff = truncated_cutoff(scales);
  out.total = cfg.samples;

  const double inv_delta = 1.0 / cfg.trap.delta();
  const double center_floor = out.level - 3.0 * inv_delta;
  const double other_cap = out.level - 4.0 * inv_delta;
  auto dom = std::make_shared<const Domain>(Domain::ball(Site::origin(cfg.d), out.radius));
  const std::size_t n = dom->size();
  const std::size_t c = *dom->index_of(Site::origin(cfg.d));
  const std::size_t blocks = (cfg.samples + cfg.block - 1) / cfg.block;
  std::vector<std::vector<double>> kept(blocks);
  EigenOptions opt;
  opt.check_simple = false;

  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    Rng rng(derive_seed(cfg.seed, b));
    const std::size_t lo = b * cfg.block, hi = std::min(cfg.samples, lo + cfg.block);
    std::vector<double> xi(n), sigma(n);
    for (std::size_t m = lo; m < hi; ++m) {
      // lambda-hat never exceeds the truncated xi(0)
      const double x0 = std::max(cfg.pot.sample(rng.uniform()), center_floor);
      if (x0 <= out.cutoff) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c) {
          xi[i] = x0;
        } else {
          xi[i] = std::min(cfg.pot.sample(rng.uniform()), other_cap);
        }
        sigma[i] = cfg.trap.sample(rng.uniform());
      }
      const double lambda = principal_eigenpair(SparseOperator(dom, xi, sigma, true), opt).lambda;
      if (lambda > out.cutoff) kept[b].push_back(lambda);
    }
  });
  for (auto& v : kept) out.upper.insert(out.upper.end(), v.begin(), v.end());
  std::sort(out.upper.begin(), out.upper.end(), std::greater<>());
  return out;
}

double empirical_A(const TruncatedSample& s, double q) {
  const double k = std::floor(q * static_cast<double>(s.total) * std::pow(s.t, -s.d));
  return s.kth_largest(static_cast<std::size_t>(k));
}

double estimate_A(const TruncatedEigenConfig& cfg) {
  const auto required = static_cast<std::size_t>(std::ceil(100.0 * std::pow(cfg.t, cfg.d)));
  if (cfg.samples < required) throw BudgetError("estimate_A: Monte Carlo budget too small", required);
  const ScaleSet scales = build_scales(cfg.t, cfg.pot, cfg.trap, cfg.d);
  return empirical_A(sample_truncated_eigenvalues(cfg, scales));
}

}  // namespace bam
