#pragma once

// Test-side random inputs, drawn from <random> so that oracles do not share
// code paths with the library's own sampler.

#include <cmath>
#include <complex>
#include <random>

#include "hamoeba/hmodel.hpp"
#include "hamoeba/mat2.hpp"

namespace testing {

using hamoeba::cplx;
using hamoeba::HPoint;
using hamoeba::Mat2C;

inline cplx gauss_c(std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma);
  return {n(rng), n(rng)};
}

inline Mat2C gauss_mat(std::mt19937_64& rng, double sigma = 1.0) {
  return {gauss_c(rng, sigma), gauss_c(rng, sigma), gauss_c(rng, sigma), gauss_c(rng, sigma)};
}

/// Gaussian matrix divided by a square root of its determinant.
inline Mat2C random_sl2(std::mt19937_64& rng, double sigma = 1.0) {
  Mat2C m = gauss_mat(rng, sigma);
  const cplx r = std::sqrt(hamoeba::det(m));
  return (1.0 / r) * m;
}

inline Mat2C random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const cplx off = gauss_c(rng);
  return {n(rng), off, std::conj(off), n(rng)};
}

/// A A^dagger for random A in SL2, built entrywise.
inline HPoint random_point(std::mt19937_64& rng, double sigma = 1.0) {
  const Mat2C a = random_sl2(rng, sigma);
  const double p11 = std::norm(a.a11) + std::norm(a.a12);
  const double p22 = std::norm(a.a21) + std::norm(a.a22);
  const cplx p12 = a.a11 * std::conj(a.a21) + a.a12 * std::conj(a.a22);
  return HPoint::from_entries(p11, p22, p12, 1e-6);
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double mat_diff(const Mat2C& a, const Mat2C& b) { return hamoeba::frobenius_norm(a - b); }

/// Eigenvalues of a general 2x2 matrix by the quadratic formula.
inline std::pair<cplx, cplx> eigenvalues(const Mat2C& a) {
  const cplx t = hamoeba::trace(a);
  const cplx d = hamoeba::det(a);
  const cplx s = std::sqrt(t * t - 4.0 * d);
  return {0.5 * (t + s), 0.5 * (t - s)};
}

/// Largest eigenvalue of a real-spectrum Hermitian matrix P^{-1} Q, the
/// textbook distance oracle d = log lambda_max (numerically naive).
inline double naive_distance(const HPoint& p, const HPoint& q) {
  const Mat2C m = hamoeba::adj(p.matrix()) * q.matrix();
  const auto [l1, l2] = eigenvalues(m);
  return std::log(std::max(l1.real(), l2.real()));
}

}  // namespace testing
