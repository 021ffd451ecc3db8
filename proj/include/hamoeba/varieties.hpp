#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamoeba/hmodel.hpp"
#include "hamoeba/mat2.hpp"

namespace hamoeba {

/// c * a11^e[0] * a12^e[1] * a21^e[2] * a22^e[3]
struct Monomial {
  std::array<int, 4> exponents{};
  cplx coefficient{};

  int degree() const { return exponents[0] + exponents[1] + exponents[2] + exponents[3]; }
};

/// Polynomial equation f(A) = 0 on 2x2 complex matrices, read on SL2(C).
class SurfaceSpec {
 public:
  static constexpr int kDefaultMaxDegree = 6;

  /// Merges duplicate monomials; throws if f is identically zero or its degree
  /// exceeds max_degree.
  SurfaceSpec(std::vector<Monomial> monomials, std::string family, std::string parameter,
              int max_degree = kDefaultMaxDegree);

  /// tr(A) - c
  static SurfaceSpec trace(cplx c);
  /// det(A) - 1, the quadric itself.
  static SurfaceSpec determinant();
  /// Coefficient table: one monomial per line, "e11 e12 e21 e22 re [im]",
  /// '#' starts a comment.
  static SurfaceSpec from_table(std::istream& in, std::string family = "poly");
  /// "trace:<complex>" or "poly:<path>".
  static SurfaceSpec parse(std::string_view descriptor);

  int degree() const { return degree_; }
  int max_degree() const { return max_degree_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::string& family() const { return family_; }
  const std::string& parameter() const { return parameter_; }
  std::string descriptor() const;

  friend SurfaceSpec operator*(const SurfaceSpec& f, const SurfaceSpec& g);

 private:
  std::vector<Monomial> monomials_;
  std::string family_;
  std::string parameter_;
  int max_degree_;
  int degree_ = 0;
};

cplx eval(const SurfaceSpec& f, const Mat2C& a);
/// sum |coefficient| * prod |entry|^e, the natural size of round-off in eval.
double eval_scale(const SurfaceSpec& f, const Mat2C& a);

/// Affine complex line {base + tau x y^T} inside the quadric det = 1.
/// x is a unit vector; y carries the scale and the constraint
/// y^T adj(base) x = 0, which makes det constant along the line.
struct Line {
  Mat2C base;
  UnitVec2 x;
  Vec2C y;

  Mat2C direction() const { return outer(x.vec(), y); }
  Mat2C at(cplx tau) const { return base + tau * direction(); }
};

/// y = J adj(base) x with J = [[0, -1], [1, 0]].
Line make_line(const Mat2C& base, const UnitVec2& x);

/// Line whose gram amoeba is the horosphere h. Base
/// sqrt(c) w w^dagger + (1/sqrt(c)) (I - w w^dagger), direction image w-perp.
/// Right multiplication by phase in SU(2) selects another line with the same
/// amoeba (the lift is unique only up to that action).
Line lift_horosphere(const Horosphere& h, const Mat2C& phase = Mat2C::identity());

/// Horosphere containing the gram amoeba of a line: w = x-perp,
/// level = |base^dagger w|^2.
Horosphere fit_horosphere(const Line& line);

/// Univariate polynomial, coefficients from low to high degree.
struct UniPoly {
  std::vector<cplx> coeffs;
  /// Size of the evaluation round-off, used when trimming.
  double scale = 0.0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  cplx operator()(cplx z) const;
};

/// Coefficients of tau -> f(base + tau N), by evaluation on deg f + 1 scaled
/// roots of unity and discrete Fourier inversion. Coefficients below 1e-11 of
/// the evaluation scale are dropped from the top; an empty result means f
/// vanishes on the whole line.
UniPoly restrict_to_line(const SurfaceSpec& f, const Line& line);

/// All roots with multiplicity (Aberth-Ehrlich). Throws
/// Error(infeasible, "line contained in surface") for the zero polynomial;
/// a nonzero constant has no roots.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs);

/// Backward-error residual |p(z)| / sum |c_j| |z|^j.
double relative_residual(std::span<const cplx> coeffs, cplx z);

struct LogWindow {
  double lo = -3.0;
  double hi = 3.0;
};

/// Matrices [[p, q], [u, c - p]], u = (p (c - p) - 1) / q, with |p|, |q|
/// log-uniform on the window and uniform phases. Sample i uses stream (seed, i).
std::vector<Mat2C> sample_trace_surface(cplx c, LogWindow window, std::size_t k, std::uint64_t seed);

struct SurfaceSample {
  std::vector<Mat2C> points;
  std::size_t lines_tried = 0;
  std::size_t roots_rejected = 0;
  std::string note;  ///< non-empty when fewer than k points were found
};

/// Intersects f with random lines: base U diag(e^l, e^-l) V with l
/// log-uniform-radius on the window, Haar direction. Roots are kept when
/// |f(A)| <= 1e-9 (1 + |A|^deg f). Throws for surfaces containing lines
/// through generic points (e.g. the quadric itself).
SurfaceSample sample_surface_via_lines(const SurfaceSpec& f, std::size_t k, LogWindow window,
                                       std::uint64_t seed, std::size_t retry_budget = 0);

enum class SteerMode { image, kernel };

struct SteerRequest {
  cplx c{};
  UnitVec2 line;  ///< the prescribed subspace L
  double lambda = 1.0;
  SteerMode mode = SteerMode::image;

  void validate() const;
};

struct SteerResult {
  Mat2C base;  ///< base solution on {tr = c}
  Mat2C b;     ///< steered solution base + tau N
  Mat2C direction;
  cplx tau{};
  double trace_residual = 0.0;  ///< |tr B - c| / |c|
  double det_residual = 0.0;    ///< |det B - 1| / max(1, |B|^2)
  double log_norm = 0.0;
  double target_log_norm = 0.0;
  double gap = 0.0;  ///< distance from B/|B| to rank <= 1 matrices with image (kernel) L
};

/// Solution of tr B = c, det B = 1 with log|B| = lambda log|A0| whose
/// normalization is close to a rank-one matrix with image (or kernel) L.
SteerResult steer(const SteerRequest& req);

/// Distance from a/|a| to matrices with image inside L (image mode) or kernel
/// containing L (kernel mode).
double steer_gap(const Mat2C& a, const UnitVec2& line, SteerMode mode);

}  // namespace hamoeba
