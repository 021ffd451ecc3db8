#include "hamoeba/hmodel.hpp"

#include <algorithm>
#include <cmath>

#include "hamoeba/error.hpp"
#include "hamoeba/parallel.hpp"

namespace hamoeba {

HPoint HPoint::from_entries(double p11, double p22, cplx p12, double tol) {
  if (!std::isfinite(p11) || !std::isfinite(p22) || !std::isfinite(p12.real()) ||
      !std::isfinite(p12.imag())) {
    fail(ErrorKind::numerical, "HPoint: non-finite entry");
  }
  require(p11 > 0.0 && p22 > 0.0, "HPoint: diagonal entries must be positive");
  const double d = p11 * p22 - std::norm(p12);
  if (!(std::abs(d - 1.0) <= tol * std::max(1.0, p11 * p22))) {
    fail(ErrorKind::validation, "HPoint: determinant " + std::to_string(d) + " is not 1");
  }
  // A deviation within the rounding of d itself carries no information, and
  // dividing by it would only inject that rounding into every entry.
  const double noise = 4.0 * 2.220446049250313e-16 * std::max(p11 * p22, std::norm(p12));
  if (std::abs(d - 1.0) <= noise) return HPoint(p11, p22, p12);
  if (d <= 0.0) fail(ErrorKind::validation, "HPoint: matrix is not positive-definite");
  const double k = 1.0 / std::sqrt(d);
  return HPoint(p11 * k, p22 * k, p12 * k);
}

HPoint HPoint::from_matrix(const Mat2C& m, double tol) {
  const double scale = frobenius_norm(m);
  const double herm_tol = tol * std::max(1.0, scale);
  require(std::abs(m.a11.imag()) <= herm_tol && std::abs(m.a22.imag()) <= herm_tol &&
              std::abs(m.a12 - std::conj(m.a21)) <= herm_tol,
          "HPoint: matrix is not Hermitian");
  return from_entries(m.a11.real(), m.a22.real(), 0.5 * (m.a12 + std::conj(m.a21)), tol);
}

void Horosphere::validate() const {
  require(std::isfinite(level) && level > 0.0, "horosphere level must be positive");
}

Horosphere Horosphere::contracted(double t) const {
  return {w, level * std::exp(-2.0 * (t - 1.0))};
}

void LemmaConfig::validate() const {
  require(d > 0.0 && epsilon > 0.0 && rho > 0.0, "lemma parameters d, epsilon, rho must be positive");
}

double distance(const HPoint& p, const HPoint& q) {
  const cplx a = p.p12();
  const cplx b = q.p12();
  const double tau =
      (p.p11() * q.p22() + p.p22() * q.p11()) - 2.0 * (a.real() * b.real() + a.imag() * b.imag());
  if (!std::isfinite(tau)) fail(ErrorKind::numerical, "distance: non-finite trace");
  if (tau < 6.0) {
    const double d11 = p.p11() - q.p11();
    const double d22 = p.p22() - q.p22();
    const double chord_sq = std::norm(a - b) - d11 * d22;
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(chord_sq, 0.0)));
  }
  if (tau > 1e150) return std::log(tau);
  return std::acosh(0.5 * tau);
}

double distance_from_origin(const HPoint& p) {
  return std::asinh(std::hypot(0.5 * (p.p11() - p.p22()), std::abs(p.p12())));
}

PolarCoords polar_coordinates(const HPoint& p) {
  const HermEigen e = herm_eigen(p.matrix());
  return {e.u_plus, distance_from_origin(p)};
}

HPoint geodesic_from_origin(const UnitVec2& u, double t) {
  const double ep = std::exp(t);
  const double em = std::exp(-t);
  const double n1 = std::norm(u.u1());
  const double n2 = std::norm(u.u2());
  const HPoint out(ep * n1 + em * n2, ep * n2 + em * n1,
                   2.0 * std::sinh(t) * u.u1() * std::conj(u.u2()));
  if (!std::isfinite(out.p11_) || !std::isfinite(out.p22_)) {
    fail(ErrorKind::numerical, "geodesic_from_origin: parameter overflows double range");
  }
  return out;
}

HPoint rescale(const HPoint& p, double s) {
  require(s > 0.0, "rescale: factor must be positive");
  return power(p, 1.0 / s);
}

HPoint power(const HPoint& p, double t) {
  const PolarCoords pc = polar_coordinates(p);
  return geodesic_from_origin(pc.direction, pc.radius * t);
}

HPoint act(const Mat2C& g, const HPoint& p) {
  const double dg = std::abs(det(g));
  require(dg > 0.0, "act: singular transformation");
  const Mat2C m = (1.0 / dg) * (g * p.matrix() * dagger(g));
  return HPoint::from_matrix(m, 1e-6);
}

double busemann(const UnitVec2& w, const HPoint& p) {
  const double v = p.p11() * std::norm(w.u1()) + p.p22() * std::norm(w.u2()) +
                   2.0 * (std::conj(w.u1()) * p.p12() * w.u2()).real();
  return std::log(v);
}

BallBoundarySample sphere_sample(const HPoint& center, double radius, std::size_t k,
                                 std::uint64_t seed) {
  require(radius > 0.0, "sphere_sample: radius must be positive");
  require(k >= 1, "sphere_sample: need at least one point");
  const Mat2C half = rescale(center, 2.0).matrix();
  BallBoundarySample out{center, radius, std::vector<HPoint>(k)};
  parallel_for(k, [&](std::size_t i) {
    Stream stream(seed, i);
    out.points[i] = act(half, geodesic_from_origin(haar_unit(stream), radius));
  });
  return out;
}

UhsPoint to_uhs(const HPoint& p) { return {p.p12() / p.p22(), 1.0 / p.p22()}; }

HPoint from_uhs(const UhsPoint& x) {
  require(x.h > 0.0, "from_uhs: height must be positive");
  return HPoint::from_entries(x.h + std::norm(x.z) / x.h, 1.0 / x.h, x.z / x.h);
}

double uhs_distance(const UhsPoint& a, const UhsPoint& b) {
  const double num = std::norm(a.z - b.z) + (a.h - b.h) * (a.h - b.h);
  return 2.0 * std::asinh(0.5 * std::sqrt(num / (a.h * b.h)));
}

std::array<double, 3> to_poincare_ball(const HPoint& p) {
  const UhsPoint u = to_uhs(p);
  const double x = u.z.real();
  const double y = u.z.imag();
  const double denom = x * x + y * y + (u.h + 1.0) * (u.h + 1.0);
  return {2.0 * x / denom, 2.0 * y / denom, (x * x + y * y + u.h * u.h - 1.0) / denom};
}

double poincare_ball_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (int i = 0; i < 3; ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::acosh(1.0 + 2.0 * diff / ((1.0 - na) * (1.0 - nb)));
}

UhpPoint uhp_point(const Mat2C& m) {
  const double scale = frobenius_norm(m);
  const double tol = 1e-12 * std::max(1.0, scale);
  require(std::abs(m.a11.imag()) <= tol && std::abs(m.a12.imag()) <= tol &&
              std::abs(m.a21.imag()) <= tol && std::abs(m.a22.imag()) <= tol &&
              std::abs(m.a12.real() - m.a21.real()) <= tol,
          "uhp_point: matrix must be real symmetric");
  const double a = m.a11.real();
  const double b = 0.5 * (m.a12.real() + m.a21.real());
  const double c = m.a22.real();
  require(a > 0.0 && c > 0.0, "uhp_point: matrix must be positive-definite");
  require(std::abs(a * c - b * b - 1.0) <= 1e-9 * std::max(1.0, a * c),
          "uhp_point: matrix must be unimodular");
  const double denom = b * b + c * c;
  return {b * (a + c) / denom, 1.0 / denom};
}

double closed_form_im(const Projector2& proj, double r, double s) {
  proj.validate();
  require(r > 0.0 && s >= 0.0, "closed_form_im: need r > 0 and s >= 0");
  const double a = proj.a;
  const double c = proj.c;
  const double grow = std::exp(2.0 * r * s);
  return 1.0 / (grow * (c * c + a * c) + (a * a + a * c) / grow);
}

std::vector<HPoint> type_ab_sample(const UnitVec2& u, double r, double cap, SetKind kind,
                                   std::size_t k, std::uint64_t seed) {
  require(r >= 0.0, "type_ab_sample: r must be non-negative");
  require(r <= cap, "type_ab_sample: r exceeds the cap radius");
  require(k >= 1, "type_ab_sample: need at least one point");
  std::vector<HPoint> out;
  out.reserve(kind == SetKind::B ? 2 * k : k);
  for (std::size_t j = 0; j < k; ++j) {
    const double t = k == 1 ? r : r + (cap - r) * static_cast<double>(j) / static_cast<double>(k - 1);
    out.push_back(geodesic_from_origin(u, t));
  }
  if (kind == SetKind::B) {
    for (std::size_t j = 0; j < k; ++j) {
      Stream stream(seed, j);
      out.push_back(geodesic_from_origin(haar_unit(stream), r));
    }
  }
  return out;
}

}  // namespace hamoeba
