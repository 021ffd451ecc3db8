#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamoeba/amoeba.hpp"
#include "hamoeba/hmodel.hpp"
#include "hamoeba/varieties.hpp"

namespace hamoeba::lab {

/// Trace-level families V_n = {tr A = c_n}.
enum class FamilyKind {
  trace_power,  ///< c_n = n^r
  exponential,  ///< c_n = e^n
  constant,     ///< c_n = c
};

struct Family {
  FamilyKind kind = FamilyKind::trace_power;
  double r = 1.0;
  cplx c = 3.0;

  cplx level(double n) const;
  std::string name() const;
  /// "trace" (alias "power"), "exp", "const".
  static Family parse(std::string_view kind, double r, cplx c);
};

enum class ScalingKind { log, power };

struct Scaling {
  ScalingKind kind = ScalingKind::log;
  double exponent = 1.0;  ///< power scaling s_n = n^exponent

  double at(double n) const;
  std::string name() const;
  static Scaling parse(std::string_view text);  ///< "log" or "pow:<e>"
};

/// Reference set for the Hausdorff column.
enum class Reference {
  shell,     ///< shell_sample(r_pred, cap): the predicted ball complement
  cap_ball,  ///< shell_sample(0, cap): the whole capped space
};

struct LimitConfig {
  Family family;
  Scaling scaling;
  std::vector<double> n_list;
  double cap = 3.0;
  std::size_t samples = 20000;
  std::size_t reference_samples = 0;  ///< 0 means the same as samples
  Kappa kappa = Kappa::polar;
  Reference reference = Reference::shell;
  /// Conjugate each sample by a Haar-random U (A -> U A U^dagger). Keeps
  /// trace and det, so samples stay on V_n, and spreads boundary directions
  /// uniformly; the raw sampler concentrates them.
  bool conjugate = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LimitRow {
  double n = 0.0;
  double s_n = 0.0;
  cplx level{};
  std::size_t samples = 0;  ///< drawn
  std::size_t in_cap = 0;
  double r_min_rescaled = 0.0;
  double r_pred = 0.0;  ///< oracle radius / s_n (doubled under gram)
  double hausdorff_to_shell = 0.0;
  std::size_t oracle_violations = 0;
  double profile_spread = 0.0;
  std::size_t profile_bins = 0;
  std::string flags;  ///< ';'-separated, e.g. "empty-in-cap"
};

struct LimitSeries {
  LimitConfig config;
  std::vector<LimitRow> rows;
};

/// For each n: sample V_n in the log-norm window [-cap s_n, cap s_n],
/// project, rescale by s_n, and compare against the reference set.
/// Every n reuses the same sample streams, so rows differ only through n.
LimitSeries tropical_limit_run(const LimitConfig& cfg);

struct LemmaReport {
  LemmaConfig config;
  std::size_t boundary_samples = 0;
  std::vector<double> s_grid;
  std::vector<double> mu;               ///< min Im over the rescaled small sphere
  std::vector<double> reference;        ///< e^{-2 rho s}
  std::vector<double> reference_measured;  ///< min Im over the rescaled rho-sphere about O
  double max_reference_error = 0.0;     ///< relative
  double slope = 0.0;                   ///< least squares of log mu on the upper half of the grid
  double expected_slope = 0.0;          ///< -2 (d + epsilon)
  std::optional<double> sigma_hat;      ///< first s after which mu < reference persistently
  bool hypothesis_holds = false;
};

/// Works in the real (H^2) slice. The small sphere is centered at
/// Q = geodesic_from_origin(e1, d); its boundary is scanned on k angles
/// (seed-dependent offset) and the minimum refined by golden section.
LemmaReport lemma_check(const LemmaConfig& cfg, std::span<const double> s_grid, std::size_t k,
                        std::uint64_t seed);

/// Runs lemma_check over a grid of configurations, mapping where a crossing
/// exists.
std::vector<LemmaReport> lemma_scan(std::span<const LemmaConfig> configs, std::span<const double> s_grid,
                                    std::size_t k, std::uint64_t seed);

struct LineCheckConfig {
  std::size_t lines = 100;
  std::size_t taus_per_line = 1000;
  double tau_max = 10.0;  ///< parameters drawn uniformly from the disc |tau| <= tau_max
  double base_log_norm = 2.0;
  std::uint64_t seed = 0;
};

struct LineCheckReport {
  std::size_t lines = 0;
  std::size_t taus_per_line = 0;
  double max_residual = 0.0;  ///< gram: max |w^dag P w - c| / c
  double polar_spread_min = 0.0;  ///< polar: min over lines of the busemann range
  double polar_spread_max = 0.0;
};

LineCheckReport verify_line_horosphere(const LineCheckConfig& cfg);

struct SweepPoint {
  cplx tau{};
  double norm = 0.0;
  double residual = 0.0;  ///< |f(A)| / eval_scale
  double busemann = 0.0;  ///< log(w^dag A A^dag w)
  double polar_radius = 0.0;
  bool escaped = false;   ///< |A| above the norm bound
};

struct SweepRecord {
  double t = 0.0;
  double level = 0.0;
  int degree = 0;  ///< degree of the restricted polynomial
  std::vector<SweepPoint> points;
  std::size_t escaped = 0;
};

/// Contracts h0 (level c0 e^{-2(t-1)}), lifts each horosphere to a line
/// (right-multiplied by phase) and intersects it with f.
std::vector<SweepRecord> horosphere_sweep(const SurfaceSpec& f, const Horosphere& h0,
                                          std::span<const double> t_grid, double norm_bound,
                                          const Mat2C& phase = Mat2C::identity());

}  // namespace hamoeba::lab
