#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "bamlab/lattice.hpp"
#include "bamlab/rng.hpp"

using namespace bam;

namespace {

// Counts monotone nearest-neighbour walks of length |y| from 0 to y by DFS.
std::uint64_t brute_paths(const Site& y) {
  const int d = y.dim();
  std::function<std::uint64_t(Site, int)> walk = [&](Site x, int left) -> std::uint64_t {
    if (left == 0) return x == y ? 1 : 0;
    std::uint64_t n = 0;
    for (int i = 0; i < d; ++i)
      for (int s : {1, -1}) {
        Site z = x + Site::unit(d, i, s);
        if (l1_distance(z, y) == left - 1) n += walk(z, left - 1);
      }
    return n;
  };
  return walk(Site::origin(d), y.norm());
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("ball sizes for small radii") {
  CHECK(l1_ball(Site::origin(2), 0).size() == 1);
  CHECK(l1_ball(Site::origin(2), 0).members.front() == Site::origin(2));
  CHECK(l1_ball(Site::origin(2), 1).size() == 5);
  CHECK(l1_ball(Site::origin(2), 2).size() == 13);
  CHECK_THROWS_AS(l1_ball(Site::origin(2), -1), std::invalid_argument);
}

TEST_CASE("ball size formula in d=2 against square enumeration") {
  for (int r = 0; r <= 10; ++r) {
    std::size_t count = 0;
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b)
        if (std::abs(a) + std::abs(b) <= r) ++count;
    const Ball ball = l1_ball(Site{3, -2}, r);
    CHECK(ball.size() == count);
    CHECK(count == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    CHECK(l1_ball_size(2, r) == count);
    CHECK(std::is_sorted(ball.members.begin(), ball.members.end()));
    for (const Site& x : ball.members) CHECK(l1_distance(x, Site{3, -2}) <= r);
  }
}

TEST_CASE("shortest path counts") {
  CHECK(shortest_path_count(Site{1, 0}) == 1);
  CHECK(shortest_path_count(Site{1, 1}) == 2);
  CHECK(shortest_path_count(Site{2, 1}) == 3);
  CHECK(shortest_path_count(Site{0, 0}) == 1);
  for (int d = 1; d <= 3; ++d)
    for (const Site& y : l1_ball(Site::origin(d), 5).members) CHECK(shortest_path_count(y) == brute_paths(y));
}

TEST_CASE("lexicographic order is a strict total order") {
  Rng rng(5);
  auto rnd = [&] { return Site{static_cast<int>(rng.below(5)) - 2, static_cast<int>(rng.below(5)) - 2}; };
  for (int k = 0; k < 2000; ++k) {
    const Site a = rnd(), b = rnd(), c = rnd();
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    if (a < b && b < c) CHECK(a < c);
  }
  CHECK(Site{1, 0} > Site{0, 1});
  CHECK(Site{0, 5} < Site{1, -5});
}

TEST_CASE("domain neighbours and boundary degree") {
  const Domain dom = Domain::ball(Site::origin(2), 1);
  const std::size_t c = *dom.index_of(Site::origin(2));
  CHECK(dom.neighbours(c).size() == 4);
  CHECK(dom.boundary_degree(c) == 0);
  const std::size_t e = *dom.index_of(Site{1, 0});
  CHECK(dom.neighbours(e).size() == 1);
  CHECK(dom.boundary_degree(e) == 3);
  const Domain tor = Domain::torus(2, 4);
  for (std::size_t i = 0; i < tor.size(); ++i) CHECK(tor.neighbours(i).size() == 4);
}

TEST_CASE("spheres") {
  CHECK(l1_sphere(Site::origin(2), 0).size() == 1);
  CHECK(l1_sphere(Site::origin(2), 3).size() == 12);
  CHECK(l1_sphere(Site::origin(3), 1).size() == 6);
}

}
