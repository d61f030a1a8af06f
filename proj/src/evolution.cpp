#include "bamlab/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

namespace bam {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*, the embedded 4th-order difference.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

MassFunction evolve(const SparseOperator& op, std::size_t start, double t_end, const EvolveOptions& opt) {
  if (op.symmetrized()) return evolve(op.with_symmetrize(false), start, t_end, opt);
  if (!(t_end >= 0)) throw std::invalid_argument("evolve: t_end must be nonnegative");
  const std::size_t n = op.size();
  if (start >= n) throw std::out_of_range("evolve: start site outside domain");

  MassFunction out;
  out.domain = op.domain_ptr();
  out.weights.assign(n, 0.0);
  out.weights[start] = 1.0;
  if (t_end == 0) return out;

  const double gauge = *std::max_element(op.xi().begin(), op.xi().end());
  auto rhs = [&](const std::vector<double>& v, std::vector<double>& dv) {
    op.apply(v, dv);
    for (std::size_t i = 0; i < n; ++i) dv[i] -= gauge * v[i];
  };

  std::vector<double>& v = out.weights;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), vn(n);
  rhs(v, k1);

  // Initial step from the operator scale.
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(op.diag_potential()[i] - gauge);
    for (double x : op.row_values(i)) r += x;
    scale = std::max(scale, r);
  }
  double h = std::min(t_end, 0.5 / std::max(scale, 1e-3));
  double t = 0, log_mass = 0;

  while (t < t_end) {
    if (out.accepted_steps + out.rejected_steps >= opt.max_steps)
      throw EvolutionError("evolve: step budget exhausted at t=" + std::to_string(t));
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * a21 * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = v[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = v[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      vn[i] = v[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(vn, k7);

    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(v[i]), std::abs(vn[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      t = last ? t_end : t + h;
      ++out.accepted_steps;
      double mass = 0;
      for (std::size_t i = 0; i < n; ++i) {
        vn[i] = std::max(vn[i], 0.0);
        mass += vn[i];
      }
      if (!(mass > 0) || !std::isfinite(mass)) throw EvolutionError("evolve: mass lost at t=" + std::to_string(t));
      log_mass += std::log(mass);
      const double inv = 1.0 / mass;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = vn[i] * inv;
        k1[i] = k7[i] * inv;  // first-same-as-last, rescaled with the state
      }
    } else {
      ++out.rejected_steps;
    }
    const double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < opt.min_step && t < t_end)
      throw EvolutionError("evolve: step size underflow (h=" + std::to_string(h) + ", t=" + std::to_string(t) +
                           ", err=" + std::to_string(err) + ")");
  }
  out.t = t_end;
  out.log_mass_offset = log_mass + gauge * t_end;
  return out;
}

MassFunction evolve(const Environment& env, DomainPtr domain, double t_end, const EvolveOptions& opt,
                    std::optional<Site> start) {
  const Site s = start.value_or(Site::origin(env.dim()));
  auto idx = domain->index_of(s);
  if (!idx) throw std::invalid_argument("evolve: start site " + s.str() + " not in domain");
  return evolve(assemble(env, domain, false), *idx, t_end, opt);
}

double localisation_ratio(const MassFunction& u, const Site& z) {
  auto idx = u.domain->index_of(z);
  if (!idx) throw std::out_of_range("localisation_ratio: site " + z.str() + " outside domain");
  return u.weights[*idx];
}

void write_snapshot_csv(const MassFunction& u, std::ostream& os) {
  const int d = u.domain->dim();
  for (int i = 0; i < d; ++i) os << 'x' << i << ',';
  os << "weight,log_mass_offset,t\n";
  char buf[96];
  for (std::size_t i = 0; i < u.weights.size(); ++i) {
    const Site& s = u.domain->site(i);
    for (int k = 0; k < d; ++k) os << s[k] << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", u.weights[i], u.log_mass_offset, u.t);
    os << buf << '\n';
  }
}

}  // namespace bam
