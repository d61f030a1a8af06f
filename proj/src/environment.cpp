#include "bamlab/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bamlab/rng.hpp"
#include "bamlab/scales.hpp"

namespace bam {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}
}  // namespace

// ---- PotentialDistribution ------------------------------------------------

PotentialDistribution PotentialDistribution::double_exponential(double rho) {
  require_positive(rho, "double-exponential rho");
  PotentialDistribution p;
  p.kind_ = Kind::DoubleExponential;
  p.param_ = rho;
  return p;
}

PotentialDistribution PotentialDistribution::general_f(std::vector<double> r, std::vector<double> f) {
  if (r.size() < 2 || r.size() != f.size())
    throw std::invalid_argument("general F: need at least two matching (r, F) nodes");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1]) || !(f[i] > f[i - 1]))
      throw std::invalid_argument("general F: nodes and values must be strictly increasing");
  }
  PotentialDistribution p;
  p.kind_ = Kind::GeneralF;
  p.r_ = std::move(r);
  p.f_ = std::move(f);
  return p;
}

PotentialDistribution PotentialDistribution::weibull(double gamma) {
  require_positive(gamma, "Weibull gamma");
  PotentialDistribution p;
  p.kind_ = Kind::Weibull;
  p.param_ = gamma;
  return p;
}

std::string PotentialDistribution::name() const {
  switch (kind_) {
    case Kind::DoubleExponential: return "double_exponential";
    case Kind::GeneralF: return "general_f";
    case Kind::Weibull: return "weibull";
  }
  return "?";
}

double PotentialDistribution::rho() const {
  switch (kind_) {
    case Kind::DoubleExponential: return param_;
    case Kind::GeneralF: {
      const std::size_t n = r_.size();
      return (r_[n - 1] - r_[n - 2]) / (f_[n - 1] - f_[n - 2]);
    }
    case Kind::Weibull: return kInf;
  }
  return kInf;
}

double PotentialDistribution::F(double x) const {
  switch (kind_) {
    case Kind::DoubleExponential: return x / param_;
    case Kind::Weibull: return x > 0 ? param_ * std::log(x) : -kInf;
    case Kind::GeneralF: {
      const std::size_t n = r_.size();
      std::size_t i = 0;
      if (x >= r_[n - 1]) {
        i = n - 2;
      } else if (x > r_[0]) {
        i = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), x) - r_.begin()) - 1;
      }
      const double slope = (f_[i + 1] - f_[i]) / (r_[i + 1] - r_[i]);
      return f_[i] + slope * (x - r_[i]);
    }
  }
  return 0;
}

double PotentialDistribution::tail(double x) const {
  if (kind_ == Kind::Weibull && x <= 0) return 1.0;
  return std::exp(-std::exp(F(x)));
}

double PotentialDistribution::cdf(double x) const {
  if (kind_ == Kind::Weibull && x <= 0) return 0.0;
  return -std::expm1(-std::exp(F(x)));
}

double PotentialDistribution::pdf(double x) const {
  if (kind_ == Kind::Weibull && x <= 0) return 0.0;
  double slope = 0;
  switch (kind_) {
    case Kind::DoubleExponential: slope = 1.0 / param_; break;
    case Kind::Weibull: slope = param_ / x; break;
    case Kind::GeneralF: {
      const double h = 1e-7 * std::max(1.0, std::abs(x));
      slope = (F(x + h) - F(x - h)) / (2 * h);
      break;
    }
  }
  const double g = std::exp(F(x));
  if (!std::isfinite(g)) return 0.0;
  return slope * g * std::exp(-g);
}

double PotentialDistribution::essential_inf() const { return kind_ == Kind::Weibull ? 0.0 : -kInf; }

double PotentialDistribution::sample(double u) const {
  // Solve exp(-e^{F(x)}) = u, i.e. F(x) = ln(-ln u).
  const double target = std::log(-std::log(u));
  switch (kind_) {
    case Kind::DoubleExponential: return param_ * target;
    case Kind::Weibull: return std::exp(target / param_);
    case Kind::GeneralF: {
      const std::size_t n = f_.size();
      std::size_t i = 0;
      if (target >= f_[n - 1]) {
        i = n - 2;
      } else if (target > f_[0]) {
        i = static_cast<std::size_t>(std::upper_bound(f_.begin(), f_.end(), target) - f_.begin()) - 1;
      }
      const double slope = (f_[i + 1] - f_[i]) / (r_[i + 1] - r_[i]);
      return r_[i] + (target - f_[i]) / slope;
    }
  }
  return 0;
}

// ---- TrapDistribution -----------------------------------------------------

TrapDistribution TrapDistribution::constant(double c) {
  require_positive(c, "constant trap value");
  TrapDistribution t;
  t.kind_ = Kind::Constant;
  t.param_ = c;
  return t;
}

TrapDistribution TrapDistribution::log_weibull(double mu) {
  if (!(mu > 1.0) || !std::isfinite(mu))
    throw std::invalid_argument("log-Weibull traps require mu > 1");
  TrapDistribution t;
  t.kind_ = Kind::LogWeibull;
  t.param_ = mu;
  return t;
}

TrapDistribution TrapDistribution::pareto(double mu) {
  require_positive(mu, "Pareto mu");
  TrapDistribution t;
  t.kind_ = Kind::Pareto;
  t.param_ = mu;
  return t;
}

TrapDistribution TrapDistribution::weibull(double mu) {
  require_positive(mu, "Weibull trap mu");
  TrapDistribution t;
  t.kind_ = Kind::Weibull;
  t.param_ = mu;
  return t;
}

std::string TrapDistribution::name() const {
  switch (kind_) {
    case Kind::Constant: return "constant";
    case Kind::LogWeibull: return "log_weibull";
    case Kind::Pareto: return "pareto";
    case Kind::Weibull: return "weibull";
  }
  return "?";
}

double TrapDistribution::delta() const { return kind_ == Kind::Constant ? param_ : 1.0; }

double TrapDistribution::tail(double x) const {
  switch (kind_) {
    case Kind::Constant: return x <= param_ ? 1.0 : 0.0;
    case Kind::LogWeibull: return x <= 1 ? 1.0 : std::exp(-std::pow(std::log(x), param_));
    case Kind::Pareto: return x <= 1 ? 1.0 : std::pow(x, -param_);
    case Kind::Weibull: return x <= 1 ? 1.0 : std::exp(-std::pow(x - 1, param_));
  }
  return 0;
}

double TrapDistribution::cdf(double x) const { return 1.0 - tail(x); }

double TrapDistribution::pdf(double x) const {
  if (kind_ != Kind::Constant && std::isinf(x)) return 0.0;
  if (x <= 1) {
    if (kind_ == Kind::Constant) throw std::domain_error("constant traps have no density");
    return 0.0;
  }
  switch (kind_) {
    case Kind::Constant: throw std::domain_error("constant traps have no density");
    case Kind::LogWeibull: {
      const double l = std::log(x);
      return param_ * std::pow(l, param_ - 1) / x * std::exp(-std::pow(l, param_));
    }
    case Kind::Pareto: return param_ * std::pow(x, -param_ - 1);
    case Kind::Weibull:
      return param_ * std::pow(x - 1, param_ - 1) * std::exp(-std::pow(x - 1, param_));
  }
  return 0;
}

double TrapDistribution::sample(double u) const {
  switch (kind_) {
    case Kind::Constant: return param_;
    case Kind::LogWeibull: return std::exp(std::pow(-std::log(u), 1.0 / param_));
    case Kind::Pareto: return std::pow(u, -1.0 / param_);
    case Kind::Weibull: return 1.0 + std::pow(-std::log(u), 1.0 / param_);
  }
  return 0;
}

// ---- Environment ----------------------------------------------------------

Environment::Environment(Ball box, std::vector<double> xi, std::vector<double> sigma,
                         PotentialDistribution pot, TrapDistribution trap, std::uint64_t seed)
    : box_(std::move(box)),
      domain_(std::make_shared<const Domain>(box_.members)),
      xi_(std::move(xi)),
      sigma_(std::move(sigma)),
      pot_(std::move(pot)),
      trap_(trap),
      seed_(seed) {
  if (xi_.size() != box_.size() || sigma_.size() != box_.size())
    throw std::invalid_argument("Environment: field sizes do not match the box");
}

std::size_t Environment::index(const Site& z) const {
  auto i = domain_->index_of(z);
  if (!i) throw std::out_of_range("site " + z.str() + " outside the environment box");
  return *i;
}

double Environment::xi_at(const Site& z) const { return xi_[index(z)]; }
double Environment::sigma_at(const Site& z) const { return sigma_[index(z)]; }

std::vector<double> Environment::xi_on(const Domain& dom) const {
  std::vector<double> out(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) out[i] = xi_at(dom.site(i));
  return out;
}

std::vector<double> Environment::sigma_on(const Domain& dom) const {
  std::vector<double> out(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) out[i] = sigma_at(dom.site(i));
  return out;
}

Environment sample_environment(const Ball& box, const PotentialDistribution& pot,
                               const TrapDistribution& trap, std::uint64_t seed) {
  Rng xi_rng(derive_seed(seed, 0));
  Rng sigma_rng(derive_seed(seed, 1));
  std::vector<double> xi(box.size()), sigma(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    xi[i] = pot.sample(xi_rng.uniform());
    sigma[i] = trap.sample(sigma_rng.uniform());
  }
  return Environment(box, std::move(xi), std::move(sigma), pot, trap, seed);
}

Environment truncate_potential_level(const Environment& env, const Site& center, double level) {
  const double inv_delta = 1.0 / env.delta_sigma();
  const double c_star = 4.0 * inv_delta;
  Environment out = env;
  const std::size_t ic = env.index(center);
  auto& xi = out.xi_mut();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xi[i] = (i == ic) ? std::max(xi[i], level - c_star + inv_delta) : std::min(xi[i], level - c_star);
  }
  return out;
}

Environment truncate_potential(const Environment& env, const Site& center, double L) {
  return truncate_potential_level(env, center, scale_a(L, env.potential(), env.dim()));
}

void write_environment_csv(const Environment& env, std::ostream& os) {
  const int d = env.dim();
  for (int i = 0; i < d; ++i) os << 'x' << i << ',';
  os << "xi,sigma\n";
  char buf[64];
  for (std::size_t i = 0; i < env.size(); ++i) {
    for (int k = 0; k < d; ++k) os << env.box().members[i][k] << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", env.xi()[i], env.sigma()[i]);
    os << buf << '\n';
  }
}

}  // namespace bam
