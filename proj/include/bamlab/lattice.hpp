#pragma once

// Finite l1 geometry of Z^d: sites, balls, site domains with neighbour
// structure, lexicographic order and shortest-path counts.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bam {

inline constexpr int kMaxDim = 4;

/// A lattice site in Z^d, 1 <= d <= kMaxDim.
///
/// Ordering is lexicographic with coordinate 0 most significant; this is the
/// order used for every tie-break in the library.
class Site {
 public:
  Site() = default;
  explicit Site(int dim);
  Site(std::initializer_list<int> coords);
  static Site origin(int dim) { return Site(dim); }
  static Site unit(int dim, int axis, int sign = 1);

  int dim() const { return dim_; }
  int operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return x_[static_cast<std::size_t>(i)]; }

  int norm() const;  // l1 norm
  bool is_origin() const { return norm() == 0; }

  Site operator+(const Site& o) const;
  Site operator-(const Site& o) const;
  Site operator-() const;

  std::uint64_t key() const;
  std::string str() const;

  friend bool operator==(const Site& a, const Site& b) = default;
  friend std::strong_ordering operator<=>(const Site& a, const Site& b);

 private:
  std::array<int, kMaxDim> x_{};
  int dim_ = 0;
};

int l1_distance(const Site& a, const Site& b);

/// Nearest neighbours in the order +e_0, -e_0, +e_1, -e_1, ...
std::vector<Site> neighbours(const Site& z);

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.key());
  }
};

/// B_r(center) = {x : |x - center| <= r}, members sorted lexicographically.
struct Ball {
  Site center;
  int radius = 0;
  std::vector<Site> members;

  std::size_t size() const { return members.size(); }
  bool contains(const Site& x) const { return l1_distance(x, center) <= radius; }
};

Ball l1_ball(const Site& center, int r);

/// Sites at l1 distance exactly r from center, lexicographically sorted.
std::vector<Site> l1_sphere(const Site& center, int r);

/// Number of sites in an l1 ball of radius r in Z^d.
std::uint64_t l1_ball_size(int d, int r);

/// n(y): number of nearest-neighbour paths of length |y| from 0 to y, i.e.
/// the multinomial coefficient |y|! / prod_i |y_i|!.
std::uint64_t shortest_path_count(const Site& y);

/// A finite set of sites with stable (lexicographic) indices and
/// in-domain nearest-neighbour lists.  Sites outside the domain are treated
/// as Dirichlet-zero; `boundary_degree(i)` counts them.
///
/// The torus variant wraps neighbours periodically and has no boundary.
class Domain {
 public:
  explicit Domain(std::vector<Site> sites);
  static Domain ball(const Site& center, int r);
  static Domain torus(int dim, int side);

  std::size_t size() const { return sites_.size(); }
  int dim() const { return dim_; }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(std::size_t i) const { return sites_[i]; }

  std::optional<std::size_t> index_of(const Site& s) const;
  bool contains(const Site& s) const { return index_of(s).has_value(); }

  std::span<const std::int32_t> neighbours(std::size_t i) const {
    return {nbr_.data() + nbr_ptr_[i], nbr_.data() + nbr_ptr_[i + 1]};
  }
  int boundary_degree(std::size_t i) const {
    return 2 * dim_ - static_cast<int>(nbr_ptr_[i + 1] - nbr_ptr_[i]);
  }
  bool periodic() const { return periodic_; }

 private:
  Domain() = default;
  void build_index();

  std::vector<Site> sites_;
  int dim_ = 0;
  bool periodic_ = false;
  std::unordered_map<std::uint64_t, std::int32_t> index_;
  std::vector<std::size_t> nbr_ptr_;
  std::vector<std::int32_t> nbr_;
};

using DomainPtr = std::shared_ptr<const Domain>;

}  // namespace bam
