#pragma once

#include <array>
#include <complex>

#include "hamoeba/rng.hpp"

namespace hamoeba {

using cplx = std::complex<double>;

/// Complex 2-vector (column).
struct Vec2C {
  cplx x1{};
  cplx x2{};
};

/// Complex 2x2 matrix, row-major entry names.
struct Mat2C {
  cplx a11{};
  cplx a12{};
  cplx a21{};
  cplx a22{};

  static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2C diagonal(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

Mat2C operator+(const Mat2C& a, const Mat2C& b);
Mat2C operator-(const Mat2C& a, const Mat2C& b);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, const Mat2C& a);
Vec2C operator*(const Mat2C& a, const Vec2C& v);

cplx det(const Mat2C& a);
cplx trace(const Mat2C& a);
/// Adjugate [[a22, -a12], [-a21, a11]]; equals the inverse when det = 1.
Mat2C adj(const Mat2C& a);
Mat2C dagger(const Mat2C& a);
Mat2C transpose(const Mat2C& a);
double frobenius_norm(const Mat2C& a);
double frobenius_norm_sq(const Mat2C& a);
bool is_finite(const Mat2C& a);

/// Rank-one x * y^T (bilinear, no conjugation).
Mat2C outer(const Vec2C& x, const Vec2C& y);

/// Unit vector of C^2, meaningful up to phase. Invariant |u1|^2 + |u2|^2 = 1.
class UnitVec2 {
 public:
  UnitVec2() : u1_(1.0), u2_(0.0) {}

  /// Normalizes (z1, z2); throws on the zero vector.
  static UnitVec2 normalized(cplx z1, cplx z2);
  static UnitVec2 e1() { return UnitVec2(1.0, 0.0); }
  static UnitVec2 e2() { return UnitVec2(0.0, 1.0); }

  cplx u1() const { return u1_; }
  cplx u2() const { return u2_; }
  Vec2C vec() const { return {u1_, u2_}; }

  /// Hermitian-orthogonal complement (-conj(u2), conj(u1)).
  UnitVec2 orthogonal() const { return UnitVec2(-std::conj(u2_), std::conj(u1_)); }

  /// Orthogonal projector u u^dagger.
  Mat2C projector() const;

 private:
  UnitVec2(cplx u1, cplx u2) : u1_(u1), u2_(u2) {}
  cplx u1_;
  cplx u2_;
};

/// Hermitian inner product <a, b> = conj(a1) b1 + conj(a2) b2.
cplx inner(const Vec2C& a, const Vec2C& b);
inline cplx inner(const UnitVec2& a, const UnitVec2& b) { return inner(a.vec(), b.vec()); }

/// Hopf chart C^2 -> S^2: (2 Re(u1 conj u2), 2 Im(u1 conj u2), |u1|^2 - |u2|^2).
std::array<double, 3> hopf(const UnitVec2& u);

/// Entries of a real rank-one projector v v^T = [[a, b], [b, c]] with
/// v = (cos t, sin t): a + c = 1, b^2 = a c.
struct Projector2 {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  static Projector2 from_angle(double theta);
  /// Throws unless a, c >= 0, a + c = 1 and b^2 = a c within 1e-12.
  void validate() const;
};

struct HermEigen {
  double lambda_plus;
  double lambda_minus;
  UnitVec2 u_plus;  ///< unit eigenvector for lambda_plus
};

/// Closed-form spectrum of a Hermitian 2x2 matrix (within 1e-10 relative).
HermEigen herm_eigen(const Mat2C& h);

/// V diag(l+^t, l-^t) V^dagger for Hermitian positive-definite p.
Mat2C spd_power(const Mat2C& p, double t);

struct Svd2 {
  double sigma1;
  double sigma2;
  UnitVec2 u;  ///< left singular vector for sigma1
};

Svd2 svd2(const Mat2C& a);

/// Haar-distributed element of SU(2) from a normalized Gaussian quaternion.
Mat2C haar_su2(Stream& stream);
/// Uniform unit vector of C^2 (first column of a Haar SU(2) element).
UnitVec2 haar_unit(Stream& stream);

}  // namespace hamoeba
