#include "hamoeba/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "hamoeba/error.hpp"

namespace hamoeba {

Mat2C operator+(const Mat2C& a, const Mat2C& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2C operator-(const Mat2C& a, const Mat2C& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2C operator*(cplx s, const Mat2C& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }

Vec2C operator*(const Mat2C& a, const Vec2C& v) {
  return {a.a11 * v.x1 + a.a12 * v.x2, a.a21 * v.x1 + a.a22 * v.x2};
}

cplx det(const Mat2C& a) { return a.a11 * a.a22 - a.a12 * a.a21; }
cplx trace(const Mat2C& a) { return a.a11 + a.a22; }
Mat2C adj(const Mat2C& a) { return {a.a22, -a.a12, -a.a21, a.a11}; }

Mat2C dagger(const Mat2C& a) {
  return {std::conj(a.a11), std::conj(a.a21), std::conj(a.a12), std::conj(a.a22)};
}

Mat2C transpose(const Mat2C& a) { return {a.a11, a.a21, a.a12, a.a22}; }

double frobenius_norm_sq(const Mat2C& a) {
  return std::norm(a.a11) + std::norm(a.a12) + std::norm(a.a21) + std::norm(a.a22);
}

double frobenius_norm(const Mat2C& a) { return std::sqrt(frobenius_norm_sq(a)); }

bool is_finite(const Mat2C& a) {
  for (cplx z : {a.a11, a.a12, a.a21, a.a22}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Mat2C outer(const Vec2C& x, const Vec2C& y) {
  return {x.x1 * y.x1, x.x1 * y.x2, x.x2 * y.x1, x.x2 * y.x2};
}

UnitVec2 UnitVec2::normalized(cplx z1, cplx z2) {
  const double n = std::hypot(std::abs(z1), std::abs(z2));
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::validation, "cannot normalize a zero or non-finite vector");
  return UnitVec2(z1 / n, z2 / n);
}

Mat2C UnitVec2::projector() const {
  const cplx off = u1_ * std::conj(u2_);
  return {std::norm(u1_), off, std::conj(off), std::norm(u2_)};
}

cplx inner(const Vec2C& a, const Vec2C& b) {
  return std::conj(a.x1) * b.x1 + std::conj(a.x2) * b.x2;
}

std::array<double, 3> hopf(const UnitVec2& u) {
  const cplx m = u.u1() * std::conj(u.u2());
  return {2.0 * m.real(), 2.0 * m.imag(), std::norm(u.u1()) - std::norm(u.u2())};
}

Projector2 Projector2::from_angle(double theta) {
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {cs * cs, cs * sn, sn * sn};
}

void Projector2::validate() const {
  constexpr double tol = 1e-12;
  require(a >= -tol && c >= -tol, "projector diagonal must be non-negative");
  require(std::abs(a + c - 1.0) <= tol, "projector trace must be 1");
  require(std::abs(b * b - a * c) <= tol, "projector must have rank one (b^2 = ac)");
}

HermEigen herm_eigen(const Mat2C& h) {
  const double scale = frobenius_norm(h);
  if (!std::isfinite(scale)) fail(ErrorKind::numerical, "herm_eigen: non-finite input");
  const double herm_tol = 1e-10 * scale;
  if (std::abs(h.a11.imag()) > herm_tol || std::abs(h.a22.imag()) > herm_tol ||
      std::abs(h.a12 - std::conj(h.a21)) > herm_tol) {
    fail(ErrorKind::validation, "herm_eigen: matrix is not Hermitian");
  }
  if (scale == 0.0) return {0.0, 0.0, UnitVec2::e1()};

  const double h11 = h.a11.real();
  const double h22 = h.a22.real();
  const cplx h12 = 0.5 * (h.a12 + std::conj(h.a21));
  const double m = std::abs(h12);
  const double mean = 0.5 * (h11 + h22);
  const double delta = 0.5 * (h11 - h22);
  const double disc = std::hypot(delta, m);
  const double d = h11 * h22 - m * m;

  double lp;
  double lm;
  if (mean >= 0.0) {
    lp = mean + disc;
    lm = lp != 0.0 ? d / lp : mean - disc;
  } else {
    lm = mean - disc;
    lp = d / lm;
  }

  // Below this gap every vector is an eigenvector; e1 by convention.
  if (disc <= 0.5e-14 * std::max(std::abs(lp), std::abs(lm))) return {lp, lm, UnitVec2::e1()};

  // lambda+ - h11 = disc - delta and lambda+ - h22 = disc + delta; the product
  // of the two is m^2, which recovers the cancelling one accurately.
  double below11;
  double below22;
  if (delta >= 0.0) {
    below22 = disc + delta;
    below11 = m * m / below22;
  } else {
    below11 = disc - delta;
    below22 = m * m / below11;
  }
  // Null vector of the larger row of H - lambda+ I.
  if (below22 >= below11) return {lp, lm, UnitVec2::normalized(below22, std::conj(h12))};
  return {lp, lm, UnitVec2::normalized(h12, below11)};
}

Mat2C spd_power(const Mat2C& p, double t) {
  const HermEigen e = herm_eigen(p);
  if (!(e.lambda_minus > 0.0)) fail(ErrorKind::validation, "spd_power: matrix is not positive-definite");
  const double fp = std::pow(e.lambda_plus, t);
  const double fm = std::pow(e.lambda_minus, t);
  const Mat2C proj = e.u_plus.projector();
  return cplx(fp) * proj + cplx(fm) * (Mat2C::identity() - proj);
}

Svd2 svd2(const Mat2C& a) {
  const double n2 = frobenius_norm_sq(a);
  if (n2 == 0.0) fail(ErrorKind::validation, "svd2: zero matrix");
  const Mat2C g{std::norm(a.a11) + std::norm(a.a12),
                a.a11 * std::conj(a.a21) + a.a12 * std::conj(a.a22),
                a.a21 * std::conj(a.a11) + a.a22 * std::conj(a.a12),
                std::norm(a.a21) + std::norm(a.a22)};
  const HermEigen e = herm_eigen(g);
  const double s1 = std::sqrt(std::max(e.lambda_plus, 0.0));
  const double s2 = std::abs(det(a)) / s1;
  return {s1, s2, e.u_plus};
}

Mat2C haar_su2(Stream& stream) {
  double q[4];
  double n = 0.0;
  do {
    for (double& x : q) x = stream.normal();
    n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  } while (n < 1e-300);
  const cplx alpha(q[0] / n, q[1] / n);
  const cplx beta(q[2] / n, q[3] / n);
  return {alpha, beta, -std::conj(beta), std::conj(alpha)};
}

UnitVec2 haar_unit(Stream& stream) {
  const Mat2C u = haar_su2(stream);
  return UnitVec2::normalized(u.a11, u.a21);
}

}  // namespace hamoeba
