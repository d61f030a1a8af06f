#include "bamlab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace bam {

namespace {

double norm2(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Lower Gershgorin bound of a (symmetric) operator.
double gershgorin_low(const SparseOperator& s) {
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    double r = 0;
    for (double v : s.row_values(i)) r += std::abs(v);
    low = std::min(low, s.diag_potential()[i] - r);
  }
  return low;
}

// Top eigenvalue of S restricted to the orthogonal complement of psi.
double deflated_top(const SparseOperator& s, const std::vector<double>& psi, double shift, long max_it) {
  const std::size_t n = s.size();
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 2.3 * static_cast<double>(i));
  auto project = [&](std::vector<double>& x) {
    const double c = dot(x, psi);
    for (std::size_t i = 0; i < n; ++i) x[i] -= c * psi[i];
  };
  project(v);
  double nv = norm2(v);
  if (nv == 0) return -std::numeric_limits<double>::infinity();
  for (auto& x : v) x /= nv;
  double rq = -std::numeric_limits<double>::infinity();
  for (long it = 0; it < max_it; ++it) {
    s.apply(v, w);
    const double next = dot(v, w);
    for (std::size_t i = 0; i < n; ++i) w[i] += shift * v[i];
    project(w);
    nv = norm2(w);
    if (nv == 0) return next;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nv;
    if (std::abs(next - rq) <= 1e-14 * (1 + std::abs(next))) return next;
    rq = next;
  }
  return rq;
}

}  // namespace

EigenPair principal_eigenpair(const SparseOperator& op, const EigenOptions& opt) {
  if (!(opt.tol > 0)) throw std::invalid_argument("principal_eigenpair: tol must be positive");
  const std::size_t n = op.size();
  EigenPair out;
  if (n == 1) {
    out.lambda = op.diag_potential()[0];
    out.phi = {1.0};
    return out;
  }
  const SparseOperator s = op.symmetrized() ? op : op.with_symmetrize(true);
  const auto& sigma = op.sigma();
  const auto [smin, smax] = std::minmax_element(sigma.begin(), sigma.end());
  // A residual of psi below tol * sqrt(smin/smax) keeps the residual of
  // phi = sigma^{1/2} psi / |.| below tol.
  const double target = opt.tol * std::sqrt(*smin / *smax);
  // With this shift S + c is entrywise nonnegative and positive definite,
  // so iterates stay nonnegative and the Perron root dominates.
  const double shift = 1.0 - gershgorin_low(s);

  std::vector<double> psi(n, 1.0 / std::sqrt(static_cast<double>(n))), w(n);
  double lambda = 0, res = std::numeric_limits<double>::infinity();
  long it = 0;
  for (;; ++it) {
    s.apply(psi, w);
    lambda = dot(psi, w);
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) r2 += (w[i] - lambda * psi[i]) * (w[i] - lambda * psi[i]);
    res = std::sqrt(r2);
    if (res <= target) break;
    if (it >= opt.max_iterations) throw ConvergenceError("power iteration did not converge", res);
    for (std::size_t i = 0; i < n; ++i) w[i] += shift * psi[i];
    const double nw = norm2(w);
    for (std::size_t i = 0; i < n; ++i) psi[i] = w[i] / nw;
  }

  if (opt.check_simple) {
    const double second = deflated_top(s, psi, shift, std::max<long>(100000, 20 * it));
    if (lambda - second <= 1e-10 * (1 + std::abs(lambda)))
      throw DegenerateEigenvalueError("top eigenvalue is not simple");
  }

  out.phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.phi[i] = std::max(0.0, std::sqrt(sigma[i]) * psi[i]);
  const double np = norm2(out.phi);
  for (auto& x : out.phi) x /= np;
  const SparseOperator a = op.symmetrized() ? op.with_symmetrize(false) : op;
  const auto aphi = a.matvec(out.phi);
  double r2 = 0;
  for (std::size_t i = 0; i < n; ++i) r2 += (aphi[i] - lambda * out.phi[i]) * (aphi[i] - lambda * out.phi[i]);
  out.lambda = lambda;
  out.residual = std::sqrt(r2);
  out.iterations = it;
  return out;
}

EigenPair principal_eigenpair(const Environment& env, const Site& center, int r, double tol) {
  auto dom = std::make_shared<const Domain>(Domain::ball(center, r));
  EigenOptions opt;
  opt.tol = tol;
  return principal_eigenpair(assemble(env, dom, false), opt);
}

SparseOperator two_radius_operator(const Environment& env, const Site& center, int r1, int r2) {
  if (r1 < 0 || r1 > r2) throw std::invalid_argument("two_radius: need 0 <= r1 <= r2");
  auto dom = std::make_shared<const Domain>(Domain::ball(center, r2));
  auto xi = env.xi_on(*dom);
  for (std::size_t i = 0; i < dom->size(); ++i)
    if (l1_distance(dom->site(i), center) > r1) xi[i] = 0.0;
  return SparseOperator(dom, std::move(xi), env.sigma_on(*dom), false);
}

double eigenvalue_two_radius(const Environment& env, const Site& center, int r1, int r2, double tol) {
  EigenOptions opt;
  opt.tol = tol;
  return principal_eigenpair(two_radius_operator(env, center, r1, r2), opt).lambda;
}

double path_expansion_eigenvalue(const SparseOperator& op, std::size_t anchor, double delta_sigma, double tol) {
  const std::size_t n = op.size();
  if (anchor >= n) throw std::out_of_range("path_expansion_eigenvalue: anchor outside domain");
  const auto& xi = op.xi();
  const auto& sigma = op.sigma();
  const Domain& dom = op.domain();
  const double base = xi[anchor] - 1.0 / sigma[anchor];
  if (n == 1) return base;
  double max_other = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (i != anchor) max_other = std::max(max_other, xi[i]);
  if (xi[anchor] - max_other < 2.0 / delta_sigma)
    throw SeparationError("path_expansion_eigenvalue: anchor potential not separated by 2/delta_sigma");

  const double inv2d = 1.0 / (2.0 * dom.dim());
  std::vector<double> c(n, 0.0), w(n), x(n), y(n);
  for (std::int32_t j : dom.neighbours(anchor)) c[static_cast<std::size_t>(j)] += 1.0;

  // Sum over loops of prod of w along the interior, via w o (N w)^k c.
  auto loop_sum = [&](double lambda) {
    for (std::size_t i = 0; i < n; ++i)
      w[i] = i == anchor ? 0.0 : inv2d / (1.0 + sigma[i] * (lambda - xi[i]));
    const double q = 1.0 / (1.0 + delta_sigma * (lambda - max_other));
    long kmax = 2;
    while (std::pow(q, static_cast<double>(kmax)) / (1 - q) >= tol && kmax < 100000) ++kmax;
    for (std::size_t i = 0; i < n; ++i) x[i] = w[i] * c[i];
    double g = dot(c, x);
    for (long k = 3; k <= kmax; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        if (i != anchor)
          for (std::int32_t j : dom.neighbours(i)) acc += x[static_cast<std::size_t>(j)];
        y[i] = w[i] * acc;
      }
      std::swap(x, y);
      g += dot(c, x);
    }
    return g;
  };

  auto f = [&](double lambda) { return base + inv2d / sigma[anchor] * loop_sum(lambda); };
  double lambda = base;
  double prev_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 10000; ++it) {
    const double next = f(lambda);
    const double step = std::abs(next - lambda);
    lambda = next;
    if (step <= tol * (1 + std::abs(lambda))) return lambda;
    if (it >= 2 && step >= prev_step) throw ConvergenceError("path expansion fixed point is not contracting", step);
    prev_step = step;
  }
  throw ConvergenceError("path expansion fixed point did not converge", prev_step);
}

double path_expansion_eigenvalue(const Environment& env, const Site& center, int r, double tol) {
  auto dom = std::make_shared<const Domain>(Domain::ball(center, r));
  const SparseOperator op = assemble(env, dom, false);
  return path_expansion_eigenvalue(op, *dom->index_of(center), env.delta_sigma(), tol);
}

namespace {

// Solves (A^T - gamma) m = b on `dom` with the rows/columns of `skip`
// removed; returns m in domain order (m[skip] untouched = 0).
std::vector<double> solve_generator(const SparseOperator& op, double gamma, const std::vector<double>& b,
                                    std::optional<std::size_t> skip) {
  const std::size_t n = op.size();
  std::vector<std::ptrdiff_t> pos(n, -1);
  std::ptrdiff_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!skip || i != *skip) pos[i] = m++;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs(m);
  const Domain& dom = op.domain();
  for (std::size_t i = 0; i < n; ++i) {
    if (pos[i] < 0) continue;
    rhs(pos[i]) = b[i];
    M(pos[i], pos[i]) = op.diag_potential()[i] - gamma;
    // (A^T)(i, j) = A(j, i) = (2d)^{-1} / sigma(i) for j ~ i.
    for (std::int32_t jj : dom.neighbours(i)) {
      const auto j = static_cast<std::size_t>(jj);
      if (pos[j] >= 0) M(pos[i], pos[j]) += 1.0 / (2.0 * dom.dim() * op.sigma()[i]);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) throw std::runtime_error("stopped-expectation system is singular");
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (pos[i] >= 0) out[i] = sol(pos[i]);
  return out;
}

}  // namespace

double verify_eigenfunction_fk(const Environment& env, const Site& center, int r, const EigenPair& pair) {
  auto dom = std::make_shared<const Domain>(Domain::ball(center, r));
  if (pair.phi.size() != dom->size()) throw std::invalid_argument("verify_eigenfunction_fk: eigenvector size mismatch");
  const std::size_t z = *dom->index_of(center);
  if (!(pair.phi[z] > 0)) throw std::invalid_argument("verify_eigenfunction_fk: phi(center) must be positive");
  if (dom->size() == 1) return 0.0;
  const SparseOperator op = assemble(env, dom, false);
  const double inv2d = 1.0 / (2.0 * dom->dim());
  std::vector<double> b(dom->size(), 0.0);
  for (std::int32_t j : dom->neighbours(z)) {
    const auto jj = static_cast<std::size_t>(j);
    b[jj] -= inv2d / op.sigma()[jj];
  }
  const auto w = solve_generator(op, pair.lambda, b, z);
  double worst = 0;
  for (std::size_t y = 0; y < dom->size(); ++y) {
    if (y == z) continue;
    const double lhs = pair.phi[y] / pair.phi[z];
    const double rhs = op.sigma()[y] / op.sigma()[z] * w[y];
    const double scale = std::max(std::abs(rhs), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double stopped_exit_mass(const Environment& env, const Site& center, int r, double gamma) {
  auto dom = std::make_shared<const Domain>(Domain::ball(center, r));
  const SparseOperator op = assemble(env, dom, false);
  const double inv2d = 1.0 / (2.0 * dom->dim());
  std::vector<double> b(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) b[i] = -inv2d * dom->boundary_degree(i) / op.sigma()[i];
  const auto m = solve_generator(op, gamma, b, std::nullopt);
  return m[*dom->index_of(center)];
}

}  // namespace bam
