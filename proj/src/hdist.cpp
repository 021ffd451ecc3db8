#include "hamoeba/hdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hamoeba/error.hpp"
#include "hamoeba/parallel.hpp"

namespace hamoeba {

namespace {

constexpr std::uint32_t kLeafSize = 8;
constexpr double kPruneSlack = 1e-9;

}  // namespace

VpTree::VpTree(std::vector<HPoint> points, std::uint64_t seed) : points_(std::move(points)) {
  require(!points_.empty(), "VpTree: empty point set");
  require(points_.size() < std::numeric_limits<std::uint32_t>::max(), "VpTree: too many points");
  order_.resize(points_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(2 * points_.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(points_.size()), seed);
}

std::int32_t VpTree::build(std::uint32_t begin, std::uint32_t end, std::uint64_t seed) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end});
  if (end - begin <= kLeafSize) return id;

  Stream stream(seed, begin);
  const auto pick = begin + static_cast<std::uint32_t>(stream() % (end - begin));
  std::swap(order_[begin], order_[pick]);
  const HPoint& vp = points_[order_[begin]];

  std::vector<std::pair<double, std::uint32_t>> rest;
  rest.reserve(end - begin - 1);
  for (std::uint32_t i = begin + 1; i < end; ++i) rest.emplace_back(distance(vp, points_[order_[i]]), order_[i]);
  const std::size_t half = rest.size() / 2;
  std::nth_element(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(half), rest.end());
  for (std::size_t i = 0; i < rest.size(); ++i) order_[begin + 1 + i] = rest[i].second;
  const std::uint32_t mid = begin + 1 + static_cast<std::uint32_t>(half);
  const double mu = rest[half].first;
  rest = {};

  const std::int32_t inside = build(begin + 1, mid, seed);
  const std::int32_t outside = build(mid, end, seed);
  nodes_[static_cast<std::size_t>(id)].mu = mu;
  nodes_[static_cast<std::size_t>(id)].inside = inside;
  nodes_[static_cast<std::size_t>(id)].outside = outside;
  return id;
}

VpTree::Hit VpTree::nearest(const HPoint& q) const { return search(q, -1.0); }

double VpTree::nearest_distance(const HPoint& q, double enough) const { return search(q, enough).distance; }

VpTree::Hit VpTree::search(const HPoint& q, double enough) const {
  Hit best{0, std::numeric_limits<double>::infinity()};
  const auto consider = [&](std::uint32_t idx) {
    const double d = distance(q, points_[idx]);
    if (d < best.distance) best = {idx, d};
  };
  // Each entry carries a lower bound on the distance from q to its subtree,
  // rechecked on pop against the current best.
  std::vector<std::pair<std::int32_t, double>> stack{{0, 0.0}};
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (best.distance <= enough) break;
    if (bound > best.distance + kPruneSlack) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.inside < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) consider(order_[i]);
      continue;
    }
    const double d = distance(q, points_[order_[node.begin]]);
    if (d < best.distance) best = {order_[node.begin], d};
    if (d < node.mu) {
      stack.emplace_back(node.outside, node.mu - d);
      stack.emplace_back(node.inside, 0.0);
    } else {
      stack.emplace_back(node.inside, d - node.mu);
      stack.emplace_back(node.outside, 0.0);
    }
  }
  return best;
}

double directed_hausdorff_brute(std::span<const HPoint> from, std::span<const HPoint> to) {
  double sup = 0.0;
  for (const HPoint& p : from) {
    double inf = std::numeric_limits<double>::infinity();
    for (const HPoint& q : to) inf = std::min(inf, distance(p, q));
    sup = std::max(sup, inf);
  }
  return sup;
}

namespace {

std::vector<HPoint> in_cap(std::span<const HPoint> pts, double cap) {
  std::vector<HPoint> out;
  for (const HPoint& p : pts) {
    if (distance_from_origin(p) <= cap) out.push_back(p);
  }
  return out;
}

// Exact sup over `from` of the nearest distance into `to`. Queries stop
// early once they cannot raise the running maximum of their block; the
// final max is exact whatever the block split.
double directed(const std::vector<HPoint>& from, const VpTree& to) {
  std::vector<double> block_max(std::max(1u, worker_count()), 0.0);
  parallel_blocks(from.size(), [&](std::size_t lo, std::size_t hi, std::size_t block) {
    double sup = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sup = std::max(sup, to.nearest_distance(from[i], sup));
    block_max[block] = sup;
  });
  return *std::max_element(block_max.begin(), block_max.end());
}

}  // namespace

CappedHausdorffReport hausdorff_capped(std::span<const HPoint> x, std::span<const HPoint> y, double cap) {
  require(cap > 0.0, "hausdorff_capped: cap must be positive");
  CappedHausdorffReport rep;
  rep.cap = cap;
  std::vector<HPoint> xc = in_cap(x, cap);
  std::vector<HPoint> yc = in_cap(y, cap);
  rep.count_x = xc.size();
  rep.count_y = yc.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (xc.empty() && yc.empty()) {
    rep.flag = "both-empty";
    return rep;
  }
  if (xc.empty() || yc.empty()) {
    rep.flag = "one-sided-empty";
    rep.directed_xy = xc.empty() ? 0.0 : inf;
    rep.directed_yx = yc.empty() ? 0.0 : inf;
    rep.value = inf;
    return rep;
  }
  const VpTree ty(yc);
  rep.directed_xy = directed(xc, ty);
  const VpTree tx(std::move(xc));
  rep.directed_yx = directed(yc, tx);
  rep.value = std::max(rep.directed_xy, rep.directed_yx);
  return rep;
}

PointCloud shell_sample(double r, double big_r, std::size_t k, std::uint64_t seed) {
  require(r >= 0.0 && r <= big_r, "shell_sample: need 0 <= r <= R");
  require(k >= 1, "shell_sample: need at least one point");
  PointCloud out{std::vector<HPoint>(k), {}};
  out.meta.family = "shell";
  out.meta.seed = seed;
  out.meta.sample_count = k;
  parallel_for(k, [&](std::size_t i) {
    Stream stream(seed, i);
    const UnitVec2 u = haar_unit(stream);
    out.points[i] = geodesic_from_origin(u, stream.uniform(r, big_r));
  });
  return out;
}

}  // namespace hamoeba
