// bamlab: command-line front end.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "bamlab/config.hpp"
#include "bamlab/evolution.hpp"
#include "bamlab/experiments.hpp"
#include "bamlab/influence.hpp"
#include "bamlab/limitlaw.hpp"
#include "bamlab/localisation.hpp"
#include "bamlab/operator.hpp"
#include "bamlab/scales.hpp"
#include "bamlab/selftest.hpp"
#include "bamlab/spectral.hpp"

namespace fs = std::filesystem;
using namespace bam;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> workers;
  std::vector<double> t;
  std::optional<int> replicas;
  std::vector<std::string> set;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value configuration file")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--out", c.out, "output directory (default $BAMLAB_OUT or ./bamlab_out)");
  sub->add_option("--workers", c.workers, "worker threads");
  sub->add_option("--t", c.t, "time grid (overrides t_list)")->delimiter(',');
  sub->add_option("--replicas", c.replicas, "replicas per grid point");
  sub->add_option("--set", c.set, "extra key=value assignments");
}

LabConfig resolve(const Common& c) {
  try {
    LabConfig cfg = c.config.empty() ? LabConfig{} : load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    if (c.workers) cfg.workers = *c.workers;
    if (!c.t.empty()) cfg.t_list = c.t;
    if (c.replicas) cfg.replicas = *c.replicas;
    for (const auto& kv : c.set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      set_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

fs::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("BAMLAB_OUT"); env && *env) return env;
  return "bamlab_out";
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

void write_scales(const ScaleSet& s, std::ostream& os) {
  os << "t = " << format_number(s.t) << "\na_t = " << format_number(s.a_t) << "\nd_t = " << format_number(s.d_t)
     << "\nr_t = " << format_number(s.r_t) << "\nL_t = " << format_number(s.L_t) << "\nR_L = " << s.R_L
     << "\nL_star = " << format_number(s.L_star) << "\nR_star = " << s.R_star << "\nh_t = " << format_number(s.h_t)
     << "\nh_star = " << format_number(s.h_star) << "\ns_xi = " << format_number(s.s_xi)
     << "\ns_sigma = " << format_number(s.s_sigma) << "\nq_sigma = " << format_number(s.q_sigma)
     << "\nf_t = " << format_number(s.f_t) << "\ng_t = " << format_number(s.g_t) << '\n';
}

int cmd_gen(const Common& c, int radius) {
  const LabConfig cfg = resolve(c);
  const double t = cfg.t_list.front();
  const ScaleSet s = build_scales(t, cfg.potential(), cfg.trap(), cfg.dimension);
  const int r = radius >= 0 ? radius : s.macrobox_radius() + 2 * s.R_L;
  const Environment env =
      sample_environment(l1_ball(Site::origin(cfg.dimension), r), cfg.potential(), cfg.trap(), cfg.seed);
  const fs::path dir = out_dir(c);
  auto f = open_out(dir, "environment.csv");
  write_environment_csv(env, f);
  auto g = open_out(dir, "scales.txt");
  write_scales(s, g);
  std::cout << "wrote " << env.size() << " sites to " << (dir / "environment.csv").string() << '\n';
  return 0;
}

int cmd_eig(const Common& c, int radius, int instances) {
  const LabConfig cfg = resolve(c);
  if (cfg.dimension != 2 || cfg.trap_kind != "log_weibull") throw UsageError("eig: needs dimension 2 and log_weibull traps");
  const Site o = Site::origin(2);
  Table tab({"instance", "seed", "lambda", "residual", "lower_bound", "upper_bound", "loop_expansion", "loop_diff",
             "fk_mismatch"});
  bool ok = true;
  for (int k = 0; k < instances; ++k) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    const Environment env = separated_environment(radius, cfg.mu, 2.5, s);
    const EigenPair p = principal_eigenpair(env, o, radius);
    double lo = -1e300, hi = -1e300;
    for (const Site& y : l1_ball(o, radius).members) {
      lo = std::max(lo, env.xi_at(y) - 1 / env.sigma_at(y));
      hi = std::max(hi, env.xi_at(y));
    }
    const double loop = path_expansion_eigenvalue(env, o, radius);
    const double fk = verify_eigenfunction_fk(env, o, radius, p);
    ok = ok && lo <= p.lambda + 1e-9 && p.lambda <= hi + 1e-9 && std::abs(loop - p.lambda) <= 1e-8 && fk <= 1e-8;
    tab.row().push(k).push(std::to_string(s)).push(p.lambda).push(p.residual).push(lo).push(hi).push(loop).push(
        loop - p.lambda).push(fk);
    if (k == 0) {
      auto f = open_out(out_dir(c), "operator_triples.csv");
      write_triples_csv(assemble(env, Domain::ball(o, radius), false), f);
    }
  }
  auto f = open_out(out_dir(c), "eig.csv");
  tab.write_csv(f);
  std::cout << "eig: " << instances << " instances, " << (ok ? "all checks passed" : "CHECK FAILED") << '\n';
  return ok ? 0 : 1;
}

int cmd_evolve(const Common& c, int radius) {
  const LabConfig cfg = resolve(c);
  const double t = cfg.t_list.front();
  const ScaleSet s = build_scales(t, cfg.potential(), cfg.trap(), cfg.dimension);
  const int r = radius >= 0 ? radius : s.macrobox_radius();
  const Environment env =
      sample_environment(l1_ball(Site::origin(cfg.dimension), r), cfg.potential(), cfg.trap(), cfg.seed);
  const MassFunction u = evolve(env, env.domain(), t);
  auto f = open_out(out_dir(c), "snapshot.csv");
  write_snapshot_csv(u, f);
  std::cout << "evolve: t = " << format_number(t) << "  ln U(t) = " << format_number(u.log_mass_offset)
            << "  steps " << u.accepted_steps << '\n';
  return 0;
}

int cmd_localise(const Common& c) {
  const LabConfig cfg = resolve(c);
  const EnsembleReport rep = run_localisation_experiment(cfg);
  emit_report(rep.report(), out_dir(c));
  std::cout << rep.summary();
  return rep.aborted() ? 1 : 0;
}

int cmd_tail(const Common& c) {
  const LabConfig cfg = resolve(c);
  const TailReport rep = run_tail_experiment(cfg);
  emit_report(rep.report(), out_dir(c));
  std::cout << rep.summary();
  return 0;
}

int cmd_profile(const Common& c) {
  const LabConfig cfg = resolve(c);
  const ProfileReport rep = run_profile_experiment(cfg);
  emit_report(rep.report(), out_dir(c));
  std::cout << rep.summary();
  return 0;
}

int cmd_percolate(const Common& c) {
  const LabConfig cfg = resolve(c);
  const PercolationReport rep = run_percolation_experiment(cfg);
  emit_report(rep.report(), out_dir(c));
  std::cout << rep.summary();
  return 0;
}

int cmd_limitlaw(const Common& c, int k, int n) {
  const LabConfig cfg = resolve(c);
  const int d = cfg.dimension;
  Rng rng(cfg.seed);
  std::vector<std::string> cols{"draw", "rank", "psi"};
  for (int i = 0; i < d; ++i) cols.push_back("z" + std::to_string(i));
  Table draws(cols);
  for (int m = 0; m < n; ++m) {
    const OrderStatSample s = sample_order_stats(k, d, rng);
    for (int j = 0; j < k; ++j) {
      draws.row().push(m).push(j + 1).push(s.psi[static_cast<std::size_t>(j)]);
      for (double z : s.z[static_cast<std::size_t>(j)]) draws.push(z);
    }
  }
  Table curves({"x", "top_cdf", "tail_curve", "laplace_cdf"});
  for (int i = 0; i <= 200; ++i) {
    const double x = -5 + 0.05 * i;
    curves.row().push(x).push(top_order_stat_cdf(x, d)).push(tail_curve(x)).push(laplace_cdf(x));
  }
  Report rep;
  rep.tables = {{"order_stats", draws}, {"curves", curves}};
  if (cfg.trap().unbounded() && cfg.potential_kind == "double_exponential" && cfg.mu > 1) {
    const InfluenceData inf = radii_of_influence(cfg.mu, cfg.rho, cfg.trap().delta(), d);
    Table nu({"x", "nu_xi", "base_xi", "nu_sigma", "base_sigma"});
    const Site y = Site::unit(d, 0, std::max(1, inf.rho_xi));
    const Site ys = Site::unit(d, 0, std::max(1, inf.rho_sigma));
    const TiltedDensity nx = nu_density(NuKind::Xi, y, inf, cfg.potential(), cfg.trap());
    const TiltedDensity ns = nu_density(NuKind::Sigma, ys, inf, cfg.potential(), cfg.trap());
    for (int i = 0; i <= 200; ++i) {
      const double x = -4 + 0.05 * i, s = 1 + 0.05 * i;
      nu.row().push(x).push(nx.pdf(x)).push(cfg.potential().pdf(x)).push(ns.pdf(s)).push(cfg.trap().pdf(s));
    }
    rep.tables.push_back({"nu_densities", nu});
  }
  rep.summary = "# limit laws\nk = " + std::to_string(k) + "  draws = " + std::to_string(n) + '\n';
  emit_report(rep, out_dir(c));
  std::cout << rep.summary;
  return 0;
}

int cmd_selftest(const Common& c) {
  const LabConfig cfg = resolve(c);
  const auto items = run_selftest(cfg.seed, std::cout);
  const bool ok = std::all_of(items.begin(), items.end(), [](const SelftestItem& i) { return i.pass; });
  std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bamlab: numerical laboratory for the Bouchaud-Anderson model"};
  app.require_subcommand(1);
  Common common;
  int radius = -1, instances = 20, k = 3, draws = 1000;

  auto* gen = app.add_subcommand("gen", "sample an environment and its scales");
  add_common(gen, common);
  gen->add_option("--radius", radius, "box radius (default macrobox plus margin)");
  auto* eig = app.add_subcommand("eig", "spectral checks on separated environments");
  add_common(eig, common);
  eig->add_option("--radius", radius, "ball radius")->default_val(2);
  eig->add_option("--instances", instances, "number of environments")->default_val(20);
  auto* ev = app.add_subcommand("evolve", "solve the Cauchy problem and dump u");
  add_common(ev, common);
  ev->add_option("--radius", radius, "domain radius (default macrobox)");
  auto* loc = app.add_subcommand("localise", "localisation ensemble");
  add_common(loc, common);
  auto* tail = app.add_subcommand("tail", "tail of the truncated eigenvalue");
  add_common(tail, common);
  auto* prof = app.add_subcommand("profile", "local profile at the localisation site");
  add_common(prof, common);
  auto* perc = app.add_subcommand("percolate", "chemical distance in site percolation");
  add_common(perc, common);
  auto* lim = app.add_subcommand("limitlaw", "limit-law samples and densities");
  add_common(lim, common);
  lim->add_option("--k", k, "order statistics per draw")->default_val(3);
  lim->add_option("--draws", draws, "number of draws")->default_val(1000);
  auto* self = app.add_subcommand("selftest", "quick invariant suite");
  add_common(self, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(common, radius);
    if (eig->parsed()) return cmd_eig(common, radius < 0 ? 2 : radius, instances);
    if (ev->parsed()) return cmd_evolve(common, radius);
    if (loc->parsed()) return cmd_localise(common);
    if (tail->parsed()) return cmd_tail(common);
    if (prof->parsed()) return cmd_profile(common);
    if (perc->parsed()) return cmd_percolate(common);
    if (lim->parsed()) return cmd_limitlaw(common, k, draws);
    if (self->parsed()) return cmd_selftest(common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    // bad settings detected by the experiment itself (budget, replica count)
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
