#include <doctest.h>

#include <cmath>

#include "hamoeba/error.hpp"
#include "hamoeba/hdist.hpp"
#include "support.hpp"

using namespace hamoeba;

namespace {

std::vector<HPoint> random_points(std::mt19937_64& rng, std::size_t n, double sigma = 1.0) {
  std::vector<HPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_point(rng, sigma));
  return out;
}

}  // namespace

TEST_SUITE("hdist") {

TEST_CASE("vp-tree nearest neighbor matches brute force") {
  std::mt19937_64 rng(70);
  const auto data = random_points(rng, 1000);
  const auto queries = random_points(rng, 1000);
  const VpTree tree(data, 7);
  for (const HPoint& q : queries) {
    double best = INFINITY;
    for (const HPoint& p : data) best = std::min(best, distance(q, p));
    const VpTree::Hit hit = tree.nearest(q);
    REQUIRE(hit.distance == best);
    REQUIRE(distance(q, data[hit.index]) == best);
  }
}

TEST_CASE("vp-tree on clustered and duplicated points") {
  std::vector<HPoint> data;
  for (int i = 0; i < 300; ++i) data.push_back(geodesic_from_origin(UnitVec2::e1(), 0.01 * (i % 30)));
  const VpTree tree(data, 1);
  for (int i = 0; i < 30; ++i) {
    const HPoint q = geodesic_from_origin(UnitVec2::e1(), 0.01 * i + 0.003);
    CHECK(tree.nearest(q).distance == doctest::Approx(0.003).epsilon(1e-9));
  }
  CHECK(tree.nearest(data[17]).distance == 0.0);
  CHECK_THROWS_AS(VpTree({}), Error);
}

TEST_CASE("nearest_distance early exit is an upper bound that stays exact below") {
  std::mt19937_64 rng(71);
  const auto data = random_points(rng, 500);
  const VpTree tree(data, 3);
  for (const HPoint& q : random_points(rng, 200)) {
    const double exact = tree.nearest(q).distance;
    const double quick = tree.nearest_distance(q, exact + 0.5);
    REQUIRE(quick >= exact);
    REQUIRE(quick <= exact + 0.5);
    REQUIRE(tree.nearest_distance(q, -1.0) == exact);
  }
}

TEST_CASE("directed hausdorff matches brute force") {
  std::mt19937_64 rng(72);
  const auto x = random_points(rng, 400);
  const auto y = random_points(rng, 300);
  const CappedHausdorffReport rep = hausdorff_capped(x, y, 1e9);
  CHECK(rep.directed_xy == directed_hausdorff_brute(x, y));
  CHECK(rep.directed_yx == directed_hausdorff_brute(y, x));
  CHECK(rep.value == std::max(rep.directed_xy, rep.directed_yx));
  CHECK(rep.count_x == 400);
  CHECK(rep.flag.empty());
}

TEST_CASE("hausdorff distance between two rays") {
  const UnitVec2 u = UnitVec2::normalized(1.0, cplx(0, 1));
  const auto a = type_ab_sample(u, 1.0, 3.0, SetKind::A, 201);
  const auto b = type_ab_sample(u, 1.5, 3.0, SetKind::A, 151);
  const CappedHausdorffReport rep = hausdorff_capped(a, b, 3.0);
  CHECK(rep.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.directed_yx <= 0.01);
}

TEST_CASE("hausdorff symmetry and subsets") {
  std::mt19937_64 rng(73);
  const auto x = random_points(rng, 500);
  auto y = random_points(rng, 500);
  CHECK(hausdorff_capped(x, y, 2.0).value == hausdorff_capped(y, x, 2.0).value);
  // X inside Y: the directed distance from X vanishes.
  std::vector<HPoint> xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  CHECK(hausdorff_capped(x, xy, 1e9).directed_xy == 0.0);
  CHECK(hausdorff_capped(x, x, 1e9).value == 0.0);
}

TEST_CASE("cap filtering and empty sides") {
  const auto far = type_ab_sample(UnitVec2::e1(), 5.0, 6.0, SetKind::A, 10);
  const auto near = type_ab_sample(UnitVec2::e1(), 0.0, 1.0, SetKind::A, 10);
  const CappedHausdorffReport both = hausdorff_capped(far, far, 2.0);
  CHECK(both.flag == "both-empty");
  CHECK(both.value == 0.0);
  const CappedHausdorffReport one = hausdorff_capped(near, far, 2.0);
  CHECK(one.flag == "one-sided-empty");
  CHECK(std::isinf(one.value));
  CHECK(one.count_y == 0);
}

TEST_CASE("shell samples") {
  const PointCloud s = shell_sample(1.0, 2.0, 5000, 74);
  REQUIRE(s.points.size() == 5000);
  double lo = INFINITY, hi = 0.0, mean = 0.0;
  for (const HPoint& p : s.points) {
    const double r = distance_from_origin(p);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    mean += r / 5000.0;
  }
  CHECK(lo >= 1.0 - 1e-12);
  CHECK(hi <= 2.0 + 1e-12);
  CHECK(mean == doctest::Approx(1.5).epsilon(0.02));
  CHECK(shell_sample(1.0, 2.0, 5000, 74).points == s.points);
}

}  // TEST_SUITE
