#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamoeba/hmodel.hpp"
#include "hamoeba/mat2.hpp"

namespace hamoeba {

/// Normalization of the quotient map SL2(C) -> H^3.
///   polar: A -> sqrt(A A^dagger), d(O, .) = log sigma1(A)
///   gram:  A -> A A^dagger,       d(O, .) = 2 log sigma1(A)
/// gram = polar dilated by 2 about O. Trace-level amoebas have the oracle
/// radius under polar; line amoebas are exact horospheres under gram.
enum class Kappa { polar, gram };

std::string_view to_string(Kappa k);
Kappa parse_kappa(std::string_view text);

/// Requires |det A - 1| <= 1e-9 max(1, |A|_F^2). The tolerance is relative
/// because det of a large matrix is computed with absolute error ~eps |A|^2.
HPoint kappa(const Mat2C& a, Kappa conv);

struct CloudMeta {
  Kappa convention = Kappa::polar;
  std::string family;
  double n = 0.0;
  double s = 1.0;  ///< accumulated rescaling factor
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
};

struct PointCloud {
  std::vector<HPoint> points;
  CloudMeta meta;
};

PointCloud project_cloud(std::span<const Mat2C> samples, Kappa conv, CloudMeta meta = {});
/// Pointwise rescale; meta.s is multiplied by s.
PointCloud rescale_cloud(const PointCloud& cloud, double s);

/// Unit vector of S^2 for the boundary direction of p (the Hopf image of
/// its top eigenvector). O maps to the north pole by convention.
std::array<double, 3> direction(const HPoint& p);

/// n nearly equal-area centers on S^2 (golden-angle spiral).
std::vector<std::array<double, 3>> fibonacci_sphere(std::size_t n);

struct RadialProfile {
  double r_min = 0.0;
  std::vector<std::array<double, 3>> centers;
  std::vector<double> bin_min;  ///< +inf for empty bins
  std::vector<std::size_t> bin_count;
  std::size_t nonempty_bins = 0;
  double spread = 0.0;  ///< max - min of bin minima over non-empty bins
};

/// Nearest-center binning of directions, per-bin minimum of d(O, .).
RadialProfile radial_profile(const PointCloud& cloud, std::size_t bins = 256);

/// (Re c)^2 / (2 cosh r)^2 + (Im c)^2 / (2 sinh r)^2. The values tr(P U),
/// U in SU(2), with d(O, P) = r, fill the ellipse where this is <= 1.
double trace_ellipse_value(cplx c, double r);

/// Smallest r >= 0 with trace_ellipse_value(c, r) <= 1 (bisection to 1e-12):
/// the radius of the ball removed by the polar amoeba of {tr A = c}.
double trace_oracle_rmin(cplx c);

/// Whether p lies in the polar amoeba of {tr A = c}.
bool trace_oracle_member(cplx c, const HPoint& p);

}  // namespace hamoeba
