#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hamoeba/mat2.hpp"

namespace hamoeba {

/// A point of hyperbolic 3-space in the matrix model: a Hermitian
/// positive-definite matrix [[p11, p12], [conj p12, p22]] with determinant 1.
/// The identity matrix is the base point O.
///
/// Points built from spectral data (geodesic_from_origin, rescale, kappa) are
/// unimodular by construction. Points built from raw entries are validated
/// and divided by sqrt(det).
class HPoint {
 public:
  HPoint() = default;

  static HPoint origin() { return {}; }

  /// Validates p11, p22 > 0 and |det - 1| <= tol * max(1, p11 p22), then
  /// renormalizes to det 1 unless the deviation is within the rounding of
  /// det itself. Throws Error(validation) otherwise.
  static HPoint from_entries(double p11, double p22, cplx p12, double tol = 1e-9);
  /// Same, from a Hermitian matrix (imaginary diagonal / asymmetry <= tol).
  static HPoint from_matrix(const Mat2C& m, double tol = 1e-9);

  double p11() const { return p11_; }
  double p22() const { return p22_; }
  cplx p12() const { return p12_; }
  Mat2C matrix() const { return {p11_, p12_, std::conj(p12_), p22_}; }
  double det() const { return p11_ * p22_ - std::norm(p12_); }

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  friend HPoint geodesic_from_origin(const UnitVec2& u, double t);
  HPoint(double p11, double p22, cplx p12) : p11_(p11), p22_(p22), p12_(p12) {}

  double p11_ = 1.0;
  double p22_ = 1.0;
  cplx p12_{};
};

/// Horosphere {P : w^dagger P w = level}, w a unit covector up to phase.
/// It passes through O iff level = 1; its center at infinity is the
/// direction Hermitian-orthogonal to w.
struct Horosphere {
  UnitVec2 w;
  double level = 1.0;

  void validate() const;
  UnitVec2 center_direction() const { return w.orthogonal(); }
  /// Contracting family: level * exp(-2 (t - 1)), so H_1 is this horosphere.
  /// log(w^dagger P w) is twice the geodesic parameter for gram images, so
  /// this moves the polar foot point at unit speed.
  Horosphere contracted(double t) const;
};

/// Parameters of the two-ball / horosphere separation estimate: the small
/// ball of radius epsilon is centered at distance d from O; the large ball of
/// radius rho is centered at O.
struct LemmaConfig {
  double d = 1.0;
  double epsilon = 0.5;
  double rho = 1.2;

  void validate() const;
  /// The stated hypothesis epsilon + rho > d (recorded, not assumed sufficient).
  bool hypothesis_holds() const { return epsilon + rho > d; }
};

struct BallBoundarySample {
  HPoint center;
  double radius = 0.0;
  std::vector<HPoint> points;
};

/// Upper half-space coordinates (z, h), h > 0.
struct UhsPoint {
  cplx z{};
  double h = 1.0;
};

struct UhpPoint {
  double re = 0.0;
  double im = 1.0;
};

/// Direction (top eigenvector) and distance from O.
struct PolarCoords {
  UnitVec2 direction;
  double radius = 0.0;
};

enum class SetKind { A, B };

/// Hyperbolic distance, log of the top eigenvalue of P^{-1} Q.
///
/// Uses tau = Re tr(adj(P) Q) = 2 cosh d. Far apart points go through
/// arccosh(tau / 2) (log tau above 1e150); nearby points use the equivalent
/// 4 sinh^2(d/2) = -det(P - Q), which keeps small distances accurate and
/// makes d(P, P) exactly zero. The expression is symmetric in P and Q.
double distance(const HPoint& p, const HPoint& q);

/// asinh of the half spectral gap; equals distance(O, p).
double distance_from_origin(const HPoint& p);

PolarCoords polar_coordinates(const HPoint& p);

/// e^t u u^dagger + e^{-t} (I - u u^dagger).
HPoint geodesic_from_origin(const UnitVec2& u, double t);

/// Contraction centered at O by factor 1/s: the matrix power P^{1/s}.
HPoint rescale(const HPoint& p, double s);

/// Real matrix power P^t (t may be negative).
HPoint power(const HPoint& p, double t);

/// Isometric action g P g^dagger / |det g|.
HPoint act(const Mat2C& g, const HPoint& p);

/// log(w^dagger P w); zero at O, 1-Lipschitz, level sets are horospheres.
double busemann(const UnitVec2& w, const HPoint& p);

/// k points C^{1/2} (e^radius u u^dagger + e^{-radius}(I - u u^dagger)) C^{1/2}
/// with u Haar-uniform, drawn from per-index streams of `seed`.
BallBoundarySample sphere_sample(const HPoint& center, double radius, std::size_t k,
                                 std::uint64_t seed);

UhsPoint to_uhs(const HPoint& p);
HPoint from_uhs(const UhsPoint& x);
double uhs_distance(const UhsPoint& a, const UhsPoint& b);

/// Standard upper half-space -> Poincare ball map (visual chart only).
std::array<double, 3> to_poincare_ball(const HPoint& p);
double poincare_ball_distance(const std::array<double, 3>& a, const std::array<double, 3>& b);

/// Mobius action of a real SPD unimodular [[A, B], [B, C]] on i:
/// (B(A + C) + i) / (B^2 + C^2).
UhpPoint uhp_point(const Mat2C& m);

/// Imaginary part of uhp_point(M^s) for M = e^r proj + e^{-r} proj_perp:
/// 1 / (e^{2rs}(c^2 + ac) + e^{-2rs}(a^2 + ac)). Bounded below by e^{-2rs}.
double closed_form_im(const Projector2& proj, double r, double s);

/// Type A: k points of the ray {gamma_u(t) : r <= t <= cap}. Type B adds k
/// points of the sphere of radius r about O.
std::vector<HPoint> type_ab_sample(const UnitVec2& u, double r, double cap, SetKind kind,
                                   std::size_t k, std::uint64_t seed = 0);

}  // namespace hamoeba
