#include "bamlab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace bam {

Site::Site(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("Site: dimension must be in [1, " +
                                std::to_string(kMaxDim) + "]");
  }
}

Site::Site(std::initializer_list<int> coords)
    : Site(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), x_.begin());
}

Site Site::unit(int dim, int axis, int sign) {
  Site s(dim);
  s[axis] = sign;
  return s;
}

int Site::norm() const {
  int n = 0;
  for (int i = 0; i < dim_; ++i) n += std::abs(x_[static_cast<std::size_t>(i)]);
  return n;
}

Site Site::operator+(const Site& o) const {
  Site r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] + o[i];
  return r;
}

Site Site::operator-(const Site& o) const {
  Site r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] - o[i];
  return r;
}

Site Site::operator-() const {
  Site r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = -(*this)[i];
  return r;
}

// 16 bits per coordinate, offset so that |x_i| < 2^15 packs injectively.
std::uint64_t Site::key() const {
  std::uint64_t k = static_cast<std::uint64_t>(dim_);
  for (int i = 0; i < dim_; ++i) {
    k = (k << 16) ^ static_cast<std::uint64_t>(
                        static_cast<std::uint16_t>((*this)[i] + 32768));
  }
  return k;
}

std::string Site::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << (*this)[i];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Site& a, const Site& b) {
  if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
  for (int i = 0; i < a.dim_; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

int l1_distance(const Site& a, const Site& b) { return (a - b).norm(); }

std::vector<Site> neighbours(const Site& z) {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(2 * z.dim()));
  for (int i = 0; i < z.dim(); ++i) {
    out.push_back(z + Site::unit(z.dim(), i, +1));
    out.push_back(z + Site::unit(z.dim(), i, -1));
  }
  return out;
}

namespace {

// Enumerates the cube center + [-r, r]^d in lexicographic order and keeps
// sites accepted by the predicate.
template <class Pred>
std::vector<Site> enumerate_cube(const Site& center, int r, Pred keep) {
  const int d = center.dim();
  std::vector<Site> out;
  Site off(d);
  for (int i = 0; i < d; ++i) off[i] = -r;
  while (true) {
    if (keep(off)) out.push_back(center + off);
    int i = d - 1;
    while (i >= 0 && off[i] == r) {
      off[i] = -r;
      --i;
    }
    if (i < 0) break;
    ++off[i];
  }
  return out;
}

}  // namespace

Ball l1_ball(const Site& center, int r) {
  if (r < 0) throw std::invalid_argument("l1_ball: negative radius");
  Ball b;
  b.center = center;
  b.radius = r;
  b.members = enumerate_cube(center, r, [r](const Site& y) { return y.norm() <= r; });
  return b;
}

std::vector<Site> l1_sphere(const Site& center, int r) {
  if (r < 0) throw std::invalid_argument("l1_sphere: negative radius");
  return enumerate_cube(center, r, [r](const Site& y) { return y.norm() == r; });
}

std::uint64_t l1_ball_size(int d, int r) {
  // |B_r| = sum_k 2^k C(d,k) C(r,k)
  std::uint64_t total = 0;
  for (int k = 0; k <= std::min(d, r); ++k) {
    std::uint64_t cdk = 1, crk = 1;
    for (int j = 0; j < k; ++j) {
      cdk = cdk * static_cast<std::uint64_t>(d - j) / static_cast<std::uint64_t>(j + 1);
      crk = crk * static_cast<std::uint64_t>(r - j) / static_cast<std::uint64_t>(j + 1);
    }
    total += (std::uint64_t{1} << k) * cdk * crk;
  }
  return total;
}

std::uint64_t shortest_path_count(const Site& y) {
  // Build the multinomial as a product of binomials to stay exact.
  std::uint64_t result = 1;
  int placed = 0;
  for (int i = 0; i < y.dim(); ++i) {
    const int k = std::abs(y[i]);
    for (int j = 1; j <= k; ++j) {
      result = result * static_cast<std::uint64_t>(placed + j) / static_cast<std::uint64_t>(j);
    }
    placed += k;
  }
  return result;
}

Domain::Domain(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw std::invalid_argument("Domain: empty site set");
  dim_ = sites_.front().dim();
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  build_index();
  nbr_ptr_.assign(1, 0);
  for (const Site& s : sites_) {
    for (const Site& y : bam::neighbours(s)) {
      if (auto j = index_of(y)) nbr_.push_back(static_cast<std::int32_t>(*j));
    }
    nbr_ptr_.push_back(nbr_.size());
  }
}

Domain Domain::ball(const Site& center, int r) { return Domain(l1_ball(center, r).members); }

Domain Domain::torus(int dim, int side) {
  if (side < 3) throw std::invalid_argument("Domain::torus: side must be >= 3");
  Domain dom;
  dom.dim_ = dim;
  dom.periodic_ = true;
  Site lo(dim);
  dom.sites_ = enumerate_cube(lo, side, [side](const Site& y) {
    for (int i = 0; i < y.dim(); ++i)
      if (y[i] < 0 || y[i] >= side) return false;
    return true;
  });
  dom.build_index();
  dom.nbr_ptr_.assign(1, 0);
  for (const Site& s : dom.sites_) {
    for (const Site& y : bam::neighbours(s)) {
      Site w = y;
      for (int i = 0; i < dim; ++i) w[i] = ((w[i] % side) + side) % side;
      dom.nbr_.push_back(static_cast<std::int32_t>(*dom.index_of(w)));
    }
    dom.nbr_ptr_.push_back(dom.nbr_.size());
  }
  return dom;
}

void Domain::build_index() {
  index_.reserve(sites_.size() * 2);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i].dim() != dim_) throw std::invalid_argument("Domain: mixed dimensions");
    index_.emplace(sites_[i].key(), static_cast<std::int32_t>(i));
  }
}

std::optional<std::size_t> Domain::index_of(const Site& s) const {
  auto it = index_.find(s.key());
  if (it == index_.end()) return std::nullopt;
  return static_cast<std::size_t>(it->second);
}

}  // namespace bam
