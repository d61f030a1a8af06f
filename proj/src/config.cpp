#include "bamlab/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bamlab/parallel.hpp"

namespace bam {

namespace {

template <class T>
T as(const std::string& key, const std::string& v) {
  try {
    return boost::lexical_cast<T>(boost::trim_copy(v));
  } catch (const boost::bad_lexical_cast&) {
    throw std::invalid_argument("config: bad value for " + key + ": '" + v + "'");
  }
}

std::vector<double> as_list(const std::string& key, const std::string& v) {
  std::vector<std::string> parts;
  boost::split(parts, v, boost::is_any_of(", "), boost::token_compress_on);
  std::vector<double> out;
  for (const auto& p : parts)
    if (!p.empty()) out.push_back(as<double>(key, p));
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt(xs[i]);
  return s;
}

}  // namespace

PotentialDistribution LabConfig::potential() const {
  if (potential_kind == "double_exponential") return PotentialDistribution::double_exponential(rho);
  if (potential_kind == "weibull") return PotentialDistribution::weibull(gamma);
  throw std::invalid_argument("config: unknown potential_kind '" + potential_kind + "'");
}

TrapDistribution LabConfig::trap() const {
  if (trap_kind == "log_weibull") return TrapDistribution::log_weibull(mu);
  if (trap_kind == "pareto") return TrapDistribution::pareto(mu);
  if (trap_kind == "weibull") return TrapDistribution::weibull(mu);
  if (trap_kind == "constant") return TrapDistribution::constant(trap_value);
  throw std::invalid_argument("config: unknown trap_kind '" + trap_kind + "'");
}

unsigned LabConfig::effective_workers() const { return workers == 0 ? default_workers() : workers; }

void LabConfig::validate() const {
  if (dimension < 1 || dimension > kMaxDim) throw std::invalid_argument("config: dimension must be in 1..4");
  if (!(rho > 0)) throw std::invalid_argument("config: rho must be positive");
  potential();
  trap();
  if (t_list.empty()) throw std::invalid_argument("config: t_list is empty");
  for (double t : t_list)
    if (!(t >= std::exp(std::exp(1.0)))) throw std::invalid_argument("config: every t must be at least e^e");
  if (replicas < 1) throw std::invalid_argument("config: replicas must be positive");
  if (samples < 1) throw std::invalid_argument("config: samples must be positive");
  if (!(tail_t >= std::exp(std::exp(1.0)))) throw std::invalid_argument("config: tail_t must be at least e^e");
  for (double q : perc_q)
    if (!(q >= 0 && q < 1)) throw std::invalid_argument("config: perc_q entries must lie in [0, 1)");
  if (perc_norm < 1 || perc_samples < 1) throw std::invalid_argument("config: bad percolation settings");
}

std::string LabConfig::echo() const {
  std::ostringstream os;
  os << "dimension = " << dimension << '\n'
     << "potential_kind = " << potential_kind << '\n'
     << "rho = " << fmt(rho) << '\n'
     << "gamma = " << fmt(gamma) << '\n'
     << "trap_kind = " << trap_kind << '\n'
     << "mu = " << fmt(mu) << '\n'
     << "trap_value = " << fmt(trap_value) << '\n'
     << "seed = " << seed << '\n'
     << "t_list = " << fmt(t_list) << '\n'
     << "replicas = " << replicas << '\n'
     << "samples = " << samples << '\n'
     << "tail_t = " << fmt(tail_t) << '\n'
     << "s_grid = " << fmt(s_grid) << '\n'
     << "profile_m = " << profile_m << '\n'
     << "delta = " << fmt(delta) << '\n'
     << "perc_q = " << fmt(perc_q) << '\n'
     << "perc_norm = " << perc_norm << '\n'
     << "perc_samples = " << perc_samples << '\n';
  return os.str();
}

void set_config_key(LabConfig& c, const std::string& key, const std::string& value) {
  const std::string v = boost::trim_copy(value);
  if (key == "dimension") c.dimension = as<int>(key, v);
  else if (key == "potential_kind") c.potential_kind = v;
  else if (key == "rho") c.rho = as<double>(key, v);
  else if (key == "gamma") c.gamma = as<double>(key, v);
  else if (key == "trap_kind") c.trap_kind = v;
  else if (key == "mu") c.mu = as<double>(key, v);
  else if (key == "trap_value") c.trap_value = as<double>(key, v);
  else if (key == "seed") c.seed = as<std::uint64_t>(key, v);
  else if (key == "t_list") c.t_list = as_list(key, v);
  else if (key == "replicas") c.replicas = as<int>(key, v);
  else if (key == "workers") c.workers = as<unsigned>(key, v);
  else if (key == "samples") c.samples = static_cast<std::size_t>(as<double>(key, v));
  else if (key == "tail_t") c.tail_t = as<double>(key, v);
  else if (key == "s_grid") c.s_grid = as_list(key, v);
  else if (key == "profile_m") c.profile_m = as<int>(key, v);
  else if (key == "delta") c.delta = as<double>(key, v);
  else if (key == "perc_q") c.perc_q = as_list(key, v);
  else if (key == "perc_norm") c.perc_norm = as<int>(key, v);
  else if (key == "perc_samples") c.perc_samples = as<int>(key, v);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

LabConfig parse_config(std::istream& is) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  LabConfig cfg;
  for (const auto& [key, node] : tree) {
    if (!node.empty()) throw std::invalid_argument("config: sections are not supported ('" + key + "')");
    set_config_key(cfg, key, node.data());
  }
  cfg.validate();
  return cfg;
}

LabConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config(in);
}

}  // namespace bam
