#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamoeba/amoeba.hpp"
#include "hamoeba/hmodel.hpp"

namespace hamoeba {

/// Vantage-point tree over HPoints with the hyperbolic metric. Queries are
/// exact: pruning keeps a 1e-9 margin so round-off in the triangle
/// inequality can never discard the true nearest neighbor.
class VpTree {
 public:
  struct Hit {
    std::size_t index = 0;  ///< position in the input sequence
    double distance = 0.0;
  };

  /// Throws on an empty set. The build only depends on the input order and seed.
  explicit VpTree(std::vector<HPoint> points, std::uint64_t seed = 0);

  Hit nearest(const HPoint& q) const;

  /// Stops at the first point within `enough` of q and returns its distance;
  /// when no point is that close, returns the exact nearest distance. This is
  /// all a directed Hausdorff sup needs.
  double nearest_distance(const HPoint& q, double enough) const;

  std::size_t size() const { return points_.size(); }
  const std::vector<HPoint>& points() const { return points_; }

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    double mu = 0.0;
    std::int32_t inside = -1;
    std::int32_t outside = -1;
  };

  Hit search(const HPoint& q, double enough) const;
  std::int32_t build(std::uint32_t begin, std::uint32_t end, std::uint64_t seed);

  std::vector<HPoint> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

/// Directed sup-inf distance, by brute force. Used as a test oracle.
double directed_hausdorff_brute(std::span<const HPoint> from, std::span<const HPoint> to);

struct CappedHausdorffReport {
  double cap = 0.0;
  double directed_xy = 0.0;  ///< sup over X of the distance to Y
  double directed_yx = 0.0;
  double value = 0.0;  ///< max of the two; +inf when exactly one side is empty
  std::size_t count_x = 0;
  std::size_t count_y = 0;
  std::string flag;  ///< "", "one-sided-empty" or "both-empty"
};

/// Restricts both sets to d(O, .) <= cap, then the symmetric Hausdorff
/// distance through exact nearest-neighbor queries.
CappedHausdorffReport hausdorff_capped(std::span<const HPoint> x, std::span<const HPoint> y, double cap);
inline CappedHausdorffReport hausdorff_capped(const PointCloud& x, const PointCloud& y, double cap) {
  return hausdorff_capped(x.points, y.points, cap);
}

/// k points with Haar directions and d(O, .) uniform on [r, big_r].
PointCloud shell_sample(double r, double big_r, std::size_t k, std::uint64_t seed);

}  // namespace hamoeba
