#include "bamlab/walker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace bam {

Trajectory simulate_btm(const Environment& env, const Site& start, double t_end, Rng& rng) {
  if (!env.contains(start)) throw std::invalid_argument("simulate_btm: start outside box");
  const Domain& dom = *env.domain();
  const int d = env.dim();
  Trajectory tr;
  tr.t_end = t_end;
  tr.sites.push_back(start);
  std::size_t i = *dom.index_of(start);
  double t = 0;
  while (true) {
    t += env.sigma()[i] * rng.exponential();
    if (t >= t_end) break;
    const auto k = static_cast<int>(rng.below(static_cast<std::uint32_t>(2 * d)));
    const Site next = tr.sites.back() + Site::unit(d, k / 2, (k % 2) ? -1 : 1);
    tr.sites.push_back(next);
    tr.jump_times.push_back(t);
    auto j = dom.index_of(next);
    if (!j) {
      tr.killed = true;
      tr.kill_time = t;
      break;
    }
    i = *j;
  }
  return tr;
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
  const int d = tr.sites.front().dim();
  os << "jump,time";
  for (int k = 0; k < d; ++k) os << ",x" << k;
  os << '\n';
  char buf[48];
  for (std::size_t j = 0; j < tr.sites.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", j == 0 ? 0.0 : tr.jump_times[j - 1]);
    os << j << ',' << buf;
    for (int k = 0; k < d; ++k) os << ',' << tr.sites[j][k];
    os << '\n';
  }
}

namespace {

McEstimate summarise(const std::vector<double>& log_w) {
  // Log-domain mean and standard error; -inf entries are zero weights.
  McEstimate est;
  est.n = log_w.size();
  double m = -std::numeric_limits<double>::infinity();
  for (double x : log_w) m = std::max(m, x);
  if (!std::isfinite(m)) return est;
  double s1 = 0, s2 = 0;
  for (double x : log_w) {
    const double y = std::exp(x - m);
    s1 += y;
    s2 += y * y;
  }
  const double n = static_cast<double>(log_w.size());
  const double mean = s1 / n;
  const double var = std::max(0.0, (s2 / n - mean * mean) * n / (n - 1));
  est.value = std::exp(m) * mean;
  est.std_error = std::exp(m) * std::sqrt(var / n);
  return est;
}

}  // namespace

McEstimate fk_estimate(const Environment& env, double t, const Site& target, std::size_t n, Rng& rng,
                       std::optional<Site> start) {
  if (n < 1000) throw std::invalid_argument("fk_estimate: need at least 1000 samples");
  const Site s0 = start.value_or(Site::origin(env.dim()));
  if (!env.contains(s0)) throw std::invalid_argument("fk_estimate: start outside box");
  const Domain& dom = *env.domain();
  const int d = env.dim();
  const auto& xi = env.xi();
  const auto& sigma = env.sigma();
  const std::size_t i0 = *dom.index_of(s0);
  const auto target_idx = dom.index_of(target);
  std::vector<double> log_w(n, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = i0;
    double time = 0, acc = 0;
    bool alive = true;
    while (true) {
      const double hold = sigma[i] * rng.exponential();
      if (time + hold >= t) {
        acc += (t - time) * xi[i];
        break;
      }
      acc += hold * xi[i];
      time += hold;
      const auto nb = static_cast<int>(rng.below(static_cast<std::uint32_t>(2 * d)));
      const Site next = dom.site(i) + Site::unit(d, nb / 2, (nb % 2) ? -1 : 1);
      auto j = dom.index_of(next);
      if (!j) {
        alive = false;
        break;
      }
      i = *j;
    }
    if (alive && target_idx && i == *target_idx) log_w[k] = acc;
  }
  return summarise(log_w);
}

double path_weight(const Path& path, double gamma, const Environment& env) {
  if (path.empty()) throw std::invalid_argument("path_weight: empty path");
  const double inv2d = 1.0 / (2.0 * env.dim());
  double w = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (l1_distance(path[i], path[i + 1]) != 1) throw std::invalid_argument("path_weight: not a nearest-neighbour path");
    const double xi = env.xi_at(path[i]);
    if (!(gamma > xi)) throw std::invalid_argument("path_weight: gamma must exceed xi along the path");
    w *= inv2d / (1.0 + env.sigma_at(path[i]) * (gamma - xi));
  }
  return w;
}

McEstimate path_weight_estimate(const Path& path, double gamma, const Environment& env, std::size_t n, Rng& rng) {
  if (path.empty()) throw std::invalid_argument("path_weight_estimate: empty path");
  const int d = env.dim();
  std::vector<double> log_w(n, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0;
    bool follows = true;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const double hold = env.sigma_at(path[i]) * rng.exponential();
      acc += hold * (env.xi_at(path[i]) - gamma);
      const auto nb = static_cast<int>(rng.below(static_cast<std::uint32_t>(2 * d)));
      if (path[i] + Site::unit(d, nb / 2, (nb % 2) ? -1 : 1) != path[i + 1]) {
        follows = false;
        break;
      }
    }
    if (follows) log_w[k] = acc;
  }
  return summarise(log_w);
}

namespace {

// BFS over `region` from u; returns parent links (or distances) as requested.
std::vector<int> bfs(const Domain& region, const std::vector<char>& passable, std::size_t u, std::size_t v,
                     bool exempt_v, std::vector<std::int64_t>* parent) {
  std::vector<int> dist(region.size(), -1);
  if (parent) parent->assign(region.size(), -1);
  std::deque<std::size_t> queue;
  dist[u] = 0;
  queue.push_back(u);
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (x == v) break;
    for (std::int32_t jj : region.neighbours(x)) {
      const auto j = static_cast<std::size_t>(jj);
      if (dist[j] >= 0) continue;
      if (!passable[j] && !(exempt_v && j == v)) continue;
      dist[j] = dist[x] + 1;
      if (parent) (*parent)[j] = static_cast<std::int64_t>(x);
      queue.push_back(j);
    }
  }
  return dist;
}

}  // namespace

std::optional<int> chemical_distance(const Domain& region, const std::vector<char>& open, const Site& u,
                                     const Site& v, bool endpoint_exempt) {
  if (open.size() != region.size()) throw std::invalid_argument("chemical_distance: mask size mismatch");
  auto iu = region.index_of(u), iv = region.index_of(v);
  if (!iu || !iv) throw std::invalid_argument("chemical_distance: endpoints must lie in the search region");
  if (*iu == *iv) {
    if (open[*iu] || endpoint_exempt) return 0;
    return std::nullopt;
  }
  if (!open[*iu]) return std::nullopt;
  const auto dist = bfs(region, open, *iu, *iv, endpoint_exempt, nullptr);
  if (dist[*iv] < 0) return std::nullopt;
  return dist[*iv];
}

std::optional<Path> find_good_path(const Environment& env, const ScaleSet& scales, const Site& z) {
  const int d = env.dim();
  if (z.is_origin()) throw std::invalid_argument("find_good_path: z must differ from the origin");
  const int inner = std::min(scales.macrobox_radius() - 1, env.box().radius);
  if (z.norm() > inner) return std::nullopt;
  // No admissible path can leave B_{|z|(1+h*)}.
  const int reach = std::min(inner, static_cast<int>(std::floor(z.norm() * (1 + scales.h_star))));
  const Domain region = Domain::ball(Site::origin(d), reach);
  std::vector<char> good(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Site& s = region.site(i);
    good[i] = env.xi_at(s) > -scales.s_xi && env.sigma_at(s) < scales.s_sigma;
  }
  const std::size_t u = *region.index_of(Site::origin(d));
  const auto v = region.index_of(z);
  if (!v || !good[u]) return std::nullopt;
  std::vector<std::int64_t> parent;
  const auto dist = bfs(region, good, u, *v, true, &parent);
  if (dist[*v] < 0 || dist[*v] > z.norm() * (1 + scales.h_star)) return std::nullopt;
  Path path;
  for (std::int64_t x = static_cast<std::int64_t>(*v); x >= 0; x = parent[static_cast<std::size_t>(x)])
    path.push_back(region.site(static_cast<std::size_t>(x)));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace bam
