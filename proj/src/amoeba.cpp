#include "hamoeba/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hamoeba/error.hpp"
#include "hamoeba/parallel.hpp"

namespace hamoeba {

std::string_view to_string(Kappa k) { return k == Kappa::polar ? "polar" : "gram"; }

Kappa parse_kappa(std::string_view text) {
  if (text == "polar") return Kappa::polar;
  if (text == "gram") return Kappa::gram;
  fail(ErrorKind::validation, "unknown kappa convention '" + std::string(text) + "' (polar|gram)");
}

HPoint kappa(const Mat2C& a, Kappa conv) {
  if (!is_finite(a)) fail(ErrorKind::numerical, "kappa: non-finite matrix");
  const double scale = std::max(1.0, frobenius_norm_sq(a));
  if (!(std::abs(det(a) - 1.0) <= 1e-9 * scale)) {
    fail(ErrorKind::validation, "kappa: determinant drifted away from 1");
  }
  const Svd2 sv = svd2(a);
  const double r = std::log(sv.sigma1);
  return geodesic_from_origin(sv.u, conv == Kappa::polar ? r : 2.0 * r);
}

PointCloud project_cloud(std::span<const Mat2C> samples, Kappa conv, CloudMeta meta) {
  PointCloud out{std::vector<HPoint>(samples.size()), std::move(meta)};
  out.meta.convention = conv;
  out.meta.sample_count = samples.size();
  parallel_for(samples.size(), [&](std::size_t i) { out.points[i] = kappa(samples[i], conv); });
  return out;
}

PointCloud rescale_cloud(const PointCloud& cloud, double s) {
  require(s > 0.0, "rescale_cloud: factor must be positive");
  PointCloud out{std::vector<HPoint>(cloud.points.size()), cloud.meta};
  out.meta.s = cloud.meta.s * s;
  parallel_for(cloud.points.size(), [&](std::size_t i) { out.points[i] = rescale(cloud.points[i], s); });
  return out;
}

std::array<double, 3> direction(const HPoint& p) {
  // P = cosh r I + sinh r (h . sigma) with h the Hopf image of the top
  // eigenvector, so the traceless part gives the direction directly.
  const std::array<double, 3> v{p.p12().real(), p.p12().imag(), 0.5 * (p.p11() - p.p22())};
  const double n = std::hypot(v[0], v[1], v[2]);
  if (n == 0.0) return {0.0, 0.0, 1.0};
  return {v[0] / n, v[1] / n, v[2] / n};
}

std::vector<std::array<double, 3>> fibonacci_sphere(std::size_t n) {
  require(n >= 1, "fibonacci_sphere: need at least one point");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<std::array<double, 3>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out[i] = {rho * std::cos(phi), rho * std::sin(phi), z};
  }
  return out;
}

RadialProfile radial_profile(const PointCloud& cloud, std::size_t bins) {
  require(!cloud.points.empty(), "radial_profile: empty cloud");
  RadialProfile prof;
  prof.centers = fibonacci_sphere(bins);
  std::vector<std::size_t> bin_of(cloud.points.size());
  std::vector<double> dist(cloud.points.size());
  parallel_for(cloud.points.size(), [&](std::size_t i) {
    const auto d = direction(cloud.points[i]);
    std::size_t best = 0;
    double best_dot = -2.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const auto& c = prof.centers[b];
      const double dot = d[0] * c[0] + d[1] * c[1] + d[2] * c[2];
      if (dot > best_dot) {
        best_dot = dot;
        best = b;
      }
    }
    bin_of[i] = best;
    dist[i] = distance_from_origin(cloud.points[i]);
  });
  prof.bin_min.assign(bins, std::numeric_limits<double>::infinity());
  prof.bin_count.assign(bins, 0);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    prof.bin_min[bin_of[i]] = std::min(prof.bin_min[bin_of[i]], dist[i]);
    ++prof.bin_count[bin_of[i]];
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < bins; ++b) {
    if (prof.bin_count[b] == 0) continue;
    ++prof.nonempty_bins;
    lo = std::min(lo, prof.bin_min[b]);
    hi = std::max(hi, prof.bin_min[b]);
  }
  prof.r_min = lo;
  prof.spread = hi - lo;
  return prof;
}

double trace_ellipse_value(cplx c, double r) {
  const double x = c.real() / (2.0 * std::cosh(r));
  const double sh = 2.0 * std::sinh(r);
  if (c.imag() == 0.0) return x * x;
  if (sh == 0.0) return std::numeric_limits<double>::infinity();
  const double y = c.imag() / sh;
  return x * x + y * y;
}

double trace_oracle_rmin(cplx c) {
  if (trace_ellipse_value(c, 0.0) <= 1.0) return 0.0;
  double lo = 0.0;
  double hi = std::asinh(0.5 * std::abs(c));
  // The ellipse value is strictly decreasing in r, and <= 1 at hi.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (trace_ellipse_value(c, mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

bool trace_oracle_member(cplx c, const HPoint& p) {
  return trace_ellipse_value(c, distance_from_origin(p)) <= 1.0;
}

}  // namespace hamoeba
