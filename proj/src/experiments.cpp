#include "bamlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>

#include "bamlab/evolution.hpp"
#include "bamlab/inequalities.hpp"
#include "bamlab/influence.hpp"
#include "bamlab/limitlaw.hpp"
#include "bamlab/localisation.hpp"
#include "bamlab/parallel.hpp"
#include "bamlab/scales.hpp"
#include "bamlab/spectral.hpp"
#include "bamlab/truncated.hpp"
#include "bamlab/walker.hpp"

namespace bam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string g(double x) { return format_number(x); }

std::string clean_message(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

double exceedance_delta(const LabConfig& cfg, double delta_sigma) {
  return cfg.delta > 0 ? cfg.delta : default_delta(delta_sigma);
}

struct Located {
  PsiMap psi;
  std::vector<std::pair<Site, double>> top;  // up to two entries
};

Located locate(const Environment& env, const ScaleSet& scales, double delta) {
  Located out;
  out.psi = psi_functional(env, scales, 0.0, delta, 1);
  if (!out.psi.empty()) out.top = top_k(out.psi, std::min<int>(2, static_cast<int>(out.psi.sites.size())));
  return out;
}

double lambda_at(const PsiMap& psi, const Site& z) {
  auto it = std::lower_bound(psi.sites.begin(), psi.sites.end(), z);
  return psi.lambda[static_cast<std::size_t>(it - psi.sites.begin())];
}

double fraction(int num, int den) { return den > 0 ? static_cast<double>(num) / den : kNaN; }

}  // namespace

std::uint64_t replica_seed(std::uint64_t master, std::size_t grid_index, std::size_t replica) {
  return derive_seed(derive_seed(master, grid_index), replica);
}

// ---------------------------------------------------------------- localisation

ReplicaDiagnostics localisation_replica(const LabConfig& cfg, double t, int replica, std::uint64_t seed) {
  ReplicaDiagnostics r;
  r.t = t;
  r.replica = replica;
  r.seed = seed;
  const int d = cfg.dimension;
  r.z = Site::origin(d);
  try {
    const auto pot = cfg.potential();
    const auto trap = cfg.trap();
    const ScaleSet scales = build_scales(t, pot, trap, d);
    const int R = scales.R_L;
    const int inner = scales.macrobox_radius();
    const Environment env = sample_environment(l1_ball(Site::origin(d), inner + 2 * R), pot, trap, seed);
    const double ds = trap.delta();
    const Located loc = locate(env, scales, exceedance_delta(cfg, ds));
    r.pi_size = loc.psi.sites.size();
    if (loc.top.empty()) {
      r.degenerate = true;
      return r;
    }
    r.z = loc.top[0].first;
    r.psi1 = loc.top[0].second;
    r.psi2 = loc.top.size() > 1 ? loc.top[1].second : -kInf;
    r.gap = r.psi1 - r.psi2;
    r.xi_z = env.xi_at(r.z);
    r.sigma_z = env.sigma_at(r.z);
    r.lambda_z = lambda_at(loc.psi, r.z);

    const double aL = scale_a(scales.L_t, pot, d);
    r.separation_flag = true;
    for (const Site& x : l1_ball(r.z, 2 * R).members)
      if (x != r.z && !(env.xi_at(x) < aL - 4.0 / ds)) r.separation_flag = false;
    double max_other = -kInf;
    for (const Site& x : l1_ball(r.z, R).members)
      if (x != r.z) max_other = std::max(max_other, env.xi_at(x));
    r.gap_flag = r.lambda_z - max_other > 2.0 / ds;
    r.eigbound_holds = r.lambda_z <= r.xi_z - 0.5 / r.sigma_z + kInequalitySlack;

    if (trap.unbounded() && cfg.mu > 1) {
      const InfluenceData inf = radii_of_influence(cfg.mu, pot.rho(), ds, d);
      const PsiMap local = psi_local(env, scales, inf, exceedance_delta(cfg, ds), 1);
      r.local_agrees = top_k(local, 1).front().first == r.z;
    }

    auto dom = std::make_shared<const Domain>(Domain::ball(Site::origin(d), inner));
    const MassFunction u = evolve(env, dom, t);
    r.ratio = localisation_ratio(u, r.z);

    const double scale = d / pot.rho() * std::log(t) * ln3(t) / t;
    for (int i = 0; i < d; ++i) r.rescaled.push_back(scale * r.z[i]);

    InequalityTally tally;
    tally.add(inequality_suite(env, r.z, R, {1.0, 5.0}));
    r.ineq_checked = tally.checked;
    r.ineq_violated = tally.violated;
  } catch (const std::exception& e) {
    r.error = clean_message(e.what());
  }
  return r;
}

EnsembleReport run_localisation_experiment(const LabConfig& cfg) {
  cfg.validate();
  if (cfg.replicas < 20) throw std::invalid_argument("run_localisation_experiment: need at least 20 replicas");
  EnsembleReport rep;
  rep.config_echo = cfg.echo();
  rep.d = cfg.dimension;
  const std::size_t nt = cfg.t_list.size(), nr = static_cast<std::size_t>(cfg.replicas);
  rep.rows.resize(nt * nr);
  parallel_for(nt * nr, cfg.effective_workers(), [&](std::size_t k) {
    const std::size_t ti = k / nr, ri = k % nr;
    rep.rows[k] = localisation_replica(cfg, cfg.t_list[ti], static_cast<int>(ri), replica_seed(cfg.seed, ti, ri));
  });

  const TrapDistribution trap = cfg.trap();
  const PotentialDistribution pot = cfg.potential();
  for (std::size_t ti = 0; ti < nt; ++ti) {
    LocalisationAggregate a;
    a.t = cfg.t_list[ti];
    const double a_t = scale_a(a.t, pot, cfg.dimension);
    std::vector<double> ratio, sig, xgap, coords;
    int agree = 0, sep = 0, gapf = 0;
    for (std::size_t ri = 0; ri < nr; ++ri) {
      const auto& r = rep.rows[ti * nr + ri];
      if (r.degenerate) {
        ++a.n_degenerate;
        continue;
      }
      if (!r.error.empty()) {
        ++a.n_error;
        continue;
      }
      ++a.n_ok;
      ratio.push_back(r.ratio);
      sig.push_back(r.sigma_z);
      xgap.push_back(std::abs(r.xi_z - a_t));
      coords.insert(coords.end(), r.rescaled.begin(), r.rescaled.end());
      agree += r.local_agrees;
      sep += r.separation_flag;
      gapf += r.gap_flag;
      if (!r.eigbound_holds) {
        ++a.eigbound_violations;
        if (r.separation_flag || r.gap_flag) ++a.eigbound_flagged_violations;
      }
      a.ineq_checked += r.ineq_checked;
      a.ineq_violated += r.ineq_violated;
    }
    a.aborted = (a.n_degenerate + a.n_error) * 5 > static_cast<int>(nr);
    if (a.n_ok > 0) {
      a.median_ratio = median(ratio);
      a.median_sigma_z = median(sig);
      a.median_xi_gap = median(xgap);
    } else {
      a.median_ratio = a.median_sigma_z = a.median_xi_gap = kNaN;
    }
    a.field_median_sigma = trap.sample(0.5);
    a.local_agreement = fraction(agree, a.n_ok);
    a.separation_fraction = fraction(sep, a.n_ok);
    a.gap_fraction = fraction(gapf, a.n_ok);
    if (coords.size() >= 20) a.laplace_ks = ks_test(coords, laplace_cdf);
    else a.laplace_ks = {kNaN, kNaN};
    rep.aggregates.push_back(a);
  }
  return rep;
}

Table EnsembleReport::table() const {
  std::vector<std::string> cols{"t", "replica", "seed", "degenerate", "error"};
  for (int i = 0; i < d; ++i) cols.push_back("z" + std::to_string(i));
  for (const char* c : {"ratio", "xi_z", "sigma_z", "lambda_z", "psi1", "psi2", "gap", "separation_flag", "gap_flag",
                        "eigbound_holds", "local_agrees"})
    cols.emplace_back(c);
  for (int i = 0; i < d; ++i) cols.push_back("rescaled" + std::to_string(i));
  for (const char* c : {"pi_size", "ineq_checked", "ineq_violated"}) cols.emplace_back(c);
  Table tab(cols);
  for (const auto& r : rows) {
    tab.row().push(r.t).push(r.replica).push(std::to_string(r.seed)).push(r.degenerate).push(r.error);
    const bool ok = r.usable();
    for (int i = 0; i < d; ++i) ok ? tab.push(r.z[i]) : tab.push(kNaN);
    if (ok) {
      tab.push(r.ratio).push(r.xi_z).push(r.sigma_z).push(r.lambda_z).push(r.psi1).push(r.psi2).push(r.gap);
      tab.push(r.separation_flag).push(r.gap_flag).push(r.eigbound_holds).push(r.local_agrees);
      for (double x : r.rescaled) tab.push(x);
    } else {
      for (int i = 0; i < 11 + d; ++i) tab.push(kNaN);
    }
    tab.push(r.pi_size).push(r.ineq_checked).push(r.ineq_violated);
  }
  return tab;
}

bool EnsembleReport::aborted() const {
  return std::any_of(aggregates.begin(), aggregates.end(), [](const auto& a) { return a.aborted; });
}

std::string EnsembleReport::summary() const {
  std::ostringstream os;
  os << "# localisation experiment\n" << config_echo << '\n';
  for (const auto& a : aggregates) {
    os << "t = " << g(a.t) << '\n'
       << "  usable / degenerate / failed: " << a.n_ok << " / " << a.n_degenerate << " / " << a.n_error
       << (a.aborted ? "  ABORTED (more than 20% excluded)" : "") << '\n'
       << "  median ratio u(t,Z)/U(t): " << g(a.median_ratio) << '\n'
       << "  median sigma(Z): " << g(a.median_sigma_z) << "  field median sigma: " << g(a.field_median_sigma) << '\n'
       << "  median |xi(Z) - a_t|: " << g(a.median_xi_gap) << '\n'
       << "  local argmax agreement: " << g(a.local_agreement) << '\n'
       << "  separation flag fraction: " << g(a.separation_fraction) << "  gap flag fraction: " << g(a.gap_fraction)
       << '\n'
       << "  eigenvalue bound violations: " << a.eigbound_violations << " (flagged " << a.eigbound_flagged_violations
       << ")\n"
       << "  inequality checks: " << a.ineq_checked << " violated " << a.ineq_violated << '\n'
       << "  Laplace KS on rescaled site (asymptotic law, finite-size trend only): D = " << g(a.laplace_ks.statistic)
       << " p = " << g(a.laplace_ks.p_value) << '\n';
  }
  return os.str();
}

Report EnsembleReport::report() const {
  Report r;
  r.summary = summary();
  r.tables.push_back({"localisation", table()});
  if (!aggregates.empty()) {
    const double tmax = aggregates.back().t;
    std::vector<double> ratio, resc;
    for (const auto& row : rows)
      if (row.t == tmax && row.usable()) {
        ratio.push_back(row.ratio);
        resc.push_back(row.rescaled.at(0));
      }
    r.histograms.push_back({"ratio_t" + g(tmax), ratio});
    r.histograms.push_back({"rescaled0_t" + g(tmax), resc});
  }
  return r;
}

// ------------------------------------------------------------------------ tail

TailReport run_tail_experiment(const LabConfig& cfg) {
  cfg.validate();
  TailReport rep;
  rep.t = cfg.tail_t;
  rep.d = cfg.dimension;
  rep.samples = cfg.samples;
  const double smax = *std::max_element(cfg.s_grid.begin(), cfg.s_grid.end());
  const double smin = *std::min_element(cfg.s_grid.begin(), cfg.s_grid.end());
  const double td = std::pow(rep.t, rep.d);
  const auto required = static_cast<std::size_t>(std::ceil(100.0 * td * std::exp(std::max(smax, 0.0))));
  if (cfg.samples < required) throw BudgetError("run_tail_experiment: Monte Carlo budget too small", required);

  TruncatedEigenConfig tc;
  tc.t = rep.t;
  tc.d = rep.d;
  tc.pot = cfg.potential();
  tc.trap = cfg.trap();
  tc.samples = cfg.samples;
  tc.seed = cfg.seed;
  tc.workers = cfg.effective_workers();
  const ScaleSet scales = build_scales(rep.t, tc.pot, tc.trap, rep.d);
  const TruncatedSample s = sample_truncated_eigenvalues(tc, scales);
  rep.a_t = scales.a_t;
  rep.d_t = scales.d_t;
  rep.cutoff = s.cutoff;
  rep.radius = s.radius;
  rep.A_t = empirical_A(s);
  if (!(rep.A_t + smin * rep.d_t > s.cutoff))
    throw std::domain_error("run_tail_experiment: s grid reaches below the censoring cutoff");
  const double M = static_cast<double>(cfg.samples);
  for (double sv : cfg.s_grid) {
    TailRow row;
    row.s = sv;
    row.threshold = rep.A_t + sv * rep.d_t;
    row.count = s.count_above(row.threshold);
    row.p_hat = static_cast<double>(row.count) / M;
    row.empirical = td * row.p_hat;
    row.se = td * std::sqrt(row.p_hat * (1 - row.p_hat) / M);
    row.theory = tail_curve(sv);
    row.z = row.se > 0 ? (row.empirical - row.theory) / row.se : kInf;
    row.within = std::abs(row.z) <= 3;
    rep.rows.push_back(row);
  }
  return rep;
}

bool TailReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(), [](const TailRow& r) { return r.within; });
}

Table TailReport::table() const {
  Table tab({"s", "threshold", "count", "p_hat", "empirical", "se", "theory", "z", "within"});
  for (const auto& r : rows)
    tab.row().push(r.s).push(r.threshold).push(r.count).push(r.p_hat).push(r.empirical).push(r.se).push(r.theory).push(
        r.z).push(r.within);
  return tab;
}

std::string TailReport::summary() const {
  std::ostringstream os;
  os << "# tail experiment\n"
     << "t = " << g(t) << "  d = " << d << "  M = " << samples << "  radius = " << radius << '\n'
     << "a_t = " << g(a_t) << "  A_t (empirical) = " << g(A_t) << "  d_t = " << g(d_t) << "  cutoff = " << g(cutoff)
     << '\n';
  for (const auto& r : rows)
    os << "s = " << g(r.s) << "  empirical = " << g(r.empirical) << " +- " << g(r.se) << "  e^-s = " << g(r.theory)
       << "  z = " << g(r.z) << (r.within ? "" : "  OUTSIDE 3 s.e.") << '\n';
  return os.str();
}

Report TailReport::report() const {
  Report r;
  r.summary = summary();
  r.tables.push_back({"tail", table()});
  return r;
}

// --------------------------------------------------------------------- profile

ProfileReport run_profile_experiment(const LabConfig& cfg) {
  cfg.validate();
  if (cfg.potential_kind != "double_exponential" || cfg.trap_kind != "log_weibull")
    throw std::invalid_argument("run_profile_experiment: needs double_exponential potential and log_weibull traps");
  const auto pot = cfg.potential();
  const auto trap = cfg.trap();
  const int d = cfg.dimension;
  const InfluenceData inf = radii_of_influence(cfg.mu, pot.rho(), trap.delta(), d);
  ProfileReport rep;
  rep.config_echo = cfg.echo();
  const int out_r = std::max(inf.rho_xi, inf.rho_sigma) + 1;
  rep.m = std::max(cfg.profile_m >= 0 ? cfg.profile_m : inf.rho_sigma + 1, out_r);
  rep.out_offset = Site::unit(d, 0, out_r);
  std::string kind = "none";
  if (!inf.F_xi.empty()) {
    kind = "xi";
    rep.interface_offset = Site::unit(d, 0, inf.rho_xi);
  } else if (!inf.F_sigma.empty()) {
    kind = "sigma";
    rep.interface_offset = Site::unit(d, 0, inf.rho_sigma);
  } else {
    rep.interface_offset = Site::origin(d);
  }

  struct One {
    bool ok = false;
    std::string error;
    LocalProfile p;
    double sigma_scaled = 0;
  };
  const std::size_t nt = cfg.t_list.size(), nr = static_cast<std::size_t>(cfg.replicas);
  std::vector<One> all(nt * nr);
  parallel_for(nt * nr, cfg.effective_workers(), [&](std::size_t k) {
    const std::size_t ti = k / nr, ri = k % nr;
    One& o = all[k];
    try {
      const double t = cfg.t_list[ti];
      const ScaleSet scales = build_scales(t, pot, trap, d);
      const int inner = scales.macrobox_radius();
      const Environment env = sample_environment(
          l1_ball(Site::origin(d), inner + std::max(2 * scales.R_L, rep.m)), pot, trap, replica_seed(cfg.seed, ti, ri));
      const Located loc = locate(env, scales, exceedance_delta(cfg, trap.delta()));
      if (loc.top.empty()) return;
      o.p = local_profile(env, scales, inf, loc.top[0].first, rep.m);
      o.ok = true;
    } catch (const std::exception& e) {
      o.error = clean_message(e.what());
    }
  });

  std::vector<std::string> rc{"t", "replica", "seed", "ok", "error"};
  for (int i = 0; i < d; ++i) rc.push_back("z" + std::to_string(i));
  for (const char* c : {"sigma_z", "sigma_scaled", "in_S_xi", "in_S_sigma"}) rc.emplace_back(c);
  rep.replicas = Table(rc);
  std::vector<std::string> sc{"t", "replica"};
  for (int i = 0; i < d; ++i) sc.push_back("y" + std::to_string(i));
  for (const char* c : {"xi_raw", "xi_shifted", "pinned_xi", "sigma_raw"}) sc.emplace_back(c);
  rep.sites = Table(sc);

  for (std::size_t ti = 0; ti < nt; ++ti) {
    const double t = cfg.t_list[ti];
    ProfileAggregate a;
    a.t = t;
    a.interface_kind = kind;
    std::vector<double> scaled, xi_out, sigma_out, iface;
    int sx = 0, ss = 0;
    for (std::size_t ri = 0; ri < nr; ++ri) {
      const One& o = all[ti * nr + ri];
      rep.replicas.row().push(t).push(ri).push(std::to_string(replica_seed(cfg.seed, ti, ri))).push(o.ok).push(o.error);
      if (!o.ok) {
        ++a.n_excluded;
        for (int i = 0; i < d + 4; ++i) rep.replicas.push(kNaN);
        continue;
      }
      ++a.n_ok;
      const LocalProfile& p = o.p;
      for (int i = 0; i < d; ++i) rep.replicas.push(p.center[i]);
      rep.replicas.push(p.sigma_center).push(p.sigma_scaled).push(p.in_S_xi).push(p.in_S_sigma);
      scaled.push_back(p.sigma_scaled);
      sx += p.in_S_xi;
      ss += p.in_S_sigma;
      for (std::size_t j = 0; j < p.offsets.size(); ++j) {
        rep.sites.row().push(t).push(ri);
        for (int i = 0; i < d; ++i) rep.sites.push(p.offsets[j][i]);
        rep.sites.push(p.xi_raw[j]).push(p.xi_shifted[j]).push(static_cast<bool>(p.pinned_xi[j])).push(p.sigma_raw[j]);
        if (p.offsets[j] == rep.out_offset) {
          xi_out.push_back(p.xi_raw[j]);
          sigma_out.push_back(p.sigma_raw[j]);
        }
        if (kind == "xi" && p.offsets[j] == rep.interface_offset) iface.push_back(p.xi_raw[j]);
        if (kind == "sigma" && p.offsets[j] == rep.interface_offset) iface.push_back(p.sigma_raw[j]);
      }
    }
    if (!scaled.empty()) {
      a.median_trap_scaling = median(scaled);
      a.iqr_trap_scaling = quantile(scaled, 0.75) - quantile(scaled, 0.25);
    }
    a.in_S_xi = fraction(sx, a.n_ok);
    a.in_S_sigma = fraction(ss, a.n_ok);
    const KsResult none{kNaN, kNaN};
    a.ks_xi_out = xi_out.size() >= 20 ? ks_test(xi_out, [&](double x) { return pot.cdf(x); }) : none;
    a.ks_sigma_out = sigma_out.size() >= 20 ? ks_test(sigma_out, [&](double x) { return trap.cdf(x); }) : none;
    if (kind != "none" && iface.size() >= 20) {
      const TiltedDensity nu =
          nu_density(kind == "xi" ? NuKind::Xi : NuKind::Sigma, rep.interface_offset, inf, pot, trap);
      a.ks_interface = ks_test(iface, [&](double x) { return nu.cdf(x); });
    } else {
      a.ks_interface = none;
    }
    rep.aggregates.push_back(a);
  }
  return rep;
}

std::string ProfileReport::summary() const {
  std::ostringstream os;
  os << "# profile experiment\n" << config_echo << "m = " << m << "  out-of-radius offset = " << out_offset.str()
     << "  interface offset = " << interface_offset.str() << '\n';
  for (const auto& a : aggregates)
    os << "t = " << g(a.t) << '\n'
       << "  usable / excluded: " << a.n_ok << " / " << a.n_excluded << '\n'
       << "  trap scaling sigma(Z)/q_sigma: median " << g(a.median_trap_scaling) << "  IQR " << g(a.iqr_trap_scaling)
       << '\n'
       << "  S_xi / S_sigma membership: " << g(a.in_S_xi) << " / " << g(a.in_S_sigma) << '\n'
       << "  KS xi at out offset vs base law: D = " << g(a.ks_xi_out.statistic) << " p = " << g(a.ks_xi_out.p_value)
       << '\n'
       << "  KS sigma at out offset vs base law: D = " << g(a.ks_sigma_out.statistic)
       << " p = " << g(a.ks_sigma_out.p_value) << '\n'
       << "  KS interface (" << a.interface_kind << ") vs tilted law: D = " << g(a.ks_interface.statistic)
       << " p = " << g(a.ks_interface.p_value) << '\n';
  return os.str();
}

Report ProfileReport::report() const {
  Report r;
  r.summary = summary();
  r.tables.push_back({"profile_replicas", replicas});
  r.tables.push_back({"profile_sites", sites});
  std::vector<double> scaled;
  const std::size_t col = replicas.column("sigma_scaled");
  for (const auto& row : replicas.rows()) {
    const double v = parse_number(row[col]);
    if (std::isfinite(v)) scaled.push_back(v);
  }
  r.histograms.push_back({"sigma_scaled", scaled});
  return r;
}

// ----------------------------------------------------------------- percolation

PercolationReport run_percolation_experiment(const LabConfig& cfg) {
  cfg.validate();
  const int d = cfg.dimension;
  PercolationReport rep;
  rep.norm = cfg.perc_norm;
  rep.q = cfg.perc_q;
  const Domain region = Domain::ball(Site::origin(d), 2 * cfg.perc_norm);
  const std::vector<Site> sphere = l1_sphere(Site::origin(d), cfg.perc_norm);
  const std::vector<char> all_open(region.size(), 1);
  const std::size_t ns = static_cast<std::size_t>(cfg.perc_samples);

  std::vector<std::string> cols{"q", "sample"};
  for (int i = 0; i < d; ++i) cols.push_back("v" + std::to_string(i));
  for (const char* c : {"chemical_distance", "ratio", "open_distance"}) cols.emplace_back(c);
  rep.table = Table(cols);

  for (std::size_t qi = 0; qi < rep.q.size(); ++qi) {
    const double q = rep.q[qi];
    std::vector<Site> vs(ns);
    std::vector<std::optional<int>> dist(ns), open_dist(ns);
    parallel_for(ns, cfg.effective_workers(), [&](std::size_t k) {
      Rng rng(replica_seed(cfg.seed, 1000 + qi, k));
      const Site v = sphere[rng.below(static_cast<std::uint32_t>(sphere.size()))];
      std::vector<char> open(region.size());
      for (std::size_t i = 0; i < region.size(); ++i) open[i] = rng.uniform() >= q;
      open[*region.index_of(Site::origin(d))] = 1;
      open[*region.index_of(v)] = 1;
      vs[k] = v;
      dist[k] = chemical_distance(region, open, Site::origin(d), v, false);
      open_dist[k] = chemical_distance(region, all_open, Site::origin(d), v, false);
    });
    std::vector<double> ratios;
    for (std::size_t k = 0; k < ns; ++k) {
      const double ratio = dist[k] ? static_cast<double>(*dist[k]) / rep.norm : kInf;
      ratios.push_back(ratio);
      if (!open_dist[k] || *open_dist[k] != rep.norm) rep.all_open_exact = false;
      rep.table.row().push(q).push(k);
      for (int i = 0; i < d; ++i) rep.table.push(vs[k][i]);
      rep.table.push(dist[k] ? static_cast<long long>(*dist[k]) : -1LL).push(ratio).push(
          open_dist[k] ? static_cast<long long>(*open_dist[k]) : -1LL);
    }
    rep.p95.push_back(quantile(ratios, 0.95));
  }
  return rep;
}

bool PercolationReport::decreasing() const {
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (!(q[i] < q[i - 1])) return false;
    if (!(p95[i] < p95[i - 1])) return false;
  }
  return true;
}

std::string PercolationReport::summary() const {
  std::ostringstream os;
  os << "# percolation experiment\n|v| = " << norm << "  all-open distances exact: " << (all_open_exact ? "yes" : "no")
     << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) os << "q = " << g(q[i]) << "  p95 d/|v| = " << g(p95[i]) << '\n';
  return os.str();
}

Report PercolationReport::report() const {
  Report r;
  r.summary = summary();
  r.tables.push_back({"percolation", table});
  return r;
}

}  // namespace bam
