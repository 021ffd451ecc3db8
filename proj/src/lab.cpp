#include "hamoeba/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hamoeba/error.hpp"
#include "hamoeba/hdist.hpp"
#include "hamoeba/parallel.hpp"
#include "hamoeba/text.hpp"

namespace hamoeba::lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxLogWindow = 300.0;

void add_flag(std::string& flags, std::string_view flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

}  // namespace

cplx Family::level(double n) const {
  switch (kind) {
    case FamilyKind::trace_power:
      return std::pow(n, r);
    case FamilyKind::exponential:
      return std::exp(n);
    case FamilyKind::constant:
      return c;
  }
  return c;
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::trace_power:
      return "trace";
    case FamilyKind::exponential:
      return "exp";
    case FamilyKind::constant:
      return "const";
  }
  return "trace";
}

Family Family::parse(std::string_view kind, double r, cplx c) {
  Family f;
  f.r = r;
  f.c = c;
  if (kind == "trace" || kind == "power") {
    f.kind = FamilyKind::trace_power;
  } else if (kind == "exp") {
    f.kind = FamilyKind::exponential;
  } else if (kind == "const" || kind == "constant") {
    f.kind = FamilyKind::constant;
  } else {
    fail(ErrorKind::validation, "unknown family '" + std::string(kind) + "' (trace|exp|const)");
  }
  require(std::isfinite(r) && r > 0.0, "family exponent r must be positive");
  return f;
}

double Scaling::at(double n) const {
  return kind == ScalingKind::log ? std::log(n) : std::pow(n, exponent);
}

std::string Scaling::name() const {
  return kind == ScalingKind::log ? "log" : "pow:" + format_complex(exponent);
}

Scaling Scaling::parse(std::string_view text) {
  Scaling s;
  if (text == "log") return s;
  if (text.starts_with("pow")) {
    s.kind = ScalingKind::power;
    if (text.size() > 3) {
      require(text[3] == ':', "scaling must be 'log' or 'pow:<exponent>'");
      s.exponent = parse_double(text.substr(4));
    }
    require(s.exponent > 0.0, "power scaling exponent must be positive");
    return s;
  }
  fail(ErrorKind::validation, "unknown scaling '" + std::string(text) + "' (log|pow:<e>)");
}

void LimitConfig::validate() const {
  require(!n_list.empty(), "tropical-limit: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    require(std::isfinite(n_list[i]), "tropical-limit: n must be finite");
    require(i == 0 || n_list[i] > n_list[i - 1], "tropical-limit: n list must be increasing");
    const double s = scaling.at(n_list[i]);
    require(std::isfinite(s) && s > 0.0, "tropical-limit: scaling s_n must be positive for every n");
  }
  require(std::isfinite(cap) && cap > 0.0, "tropical-limit: cap must be positive");
  require(samples >= 1000, "tropical-limit: need at least 1000 samples");
}

LimitSeries tropical_limit_run(const LimitConfig& cfg) {
  cfg.validate();
  const std::uint64_t sample_seed = derive_seed(cfg.seed, "limit-samples");
  const std::uint64_t conj_seed = derive_seed(cfg.seed, "limit-conjugation");
  const std::uint64_t ref_seed = derive_seed(cfg.seed, "limit-reference");
  const std::size_t k = cfg.samples;
  const std::size_t k_ref = cfg.reference_samples > 0 ? cfg.reference_samples : k;
  const double conv_factor = cfg.kappa == Kappa::polar ? 1.0 : 2.0;

  LimitSeries series{cfg, {}};
  for (const double n : cfg.n_list) {
    LimitRow row;
    row.n = n;
    row.s_n = cfg.scaling.at(n);
    row.level = cfg.family.level(n);
    row.samples = k;
    if (!std::isfinite(std::abs(row.level))) fail(ErrorKind::numerical, "tropical-limit: family level overflows");

    // Log-norm window reaching hyperbolic radius cap * s_n after projection.
    double window = cfg.cap * row.s_n / conv_factor;
    if (window > kMaxLogWindow) {
      window = kMaxLogWindow;
      add_flag(row.flags, "window-clamped");
    }
    std::vector<Mat2C> mats = sample_trace_surface(row.level, {-window, window}, k, sample_seed);
    if (cfg.conjugate) {
      parallel_for(k, [&](std::size_t i) {
        Stream stream(conj_seed, i);
        const Mat2C u = haar_su2(stream);
        mats[i] = u * mats[i] * dagger(u);
      });
    }

    const double r_oracle = conv_factor * trace_oracle_rmin(row.level);
    std::vector<HPoint> rescaled(k);
    std::vector<double> radius(k);
    parallel_for(k, [&](std::size_t i) {
      const HPoint p = kappa(mats[i], cfg.kappa);
      radius[i] = distance_from_origin(p);
      rescaled[i] = rescale(p, row.s_n);
    });
    mats = {};

    double r_min = kInf;
    PointCloud capped;
    capped.meta = {cfg.kappa, cfg.family.name(), n, row.s_n, cfg.seed, k};
    for (std::size_t i = 0; i < k; ++i) {
      r_min = std::min(r_min, radius[i]);
      if (radius[i] < r_oracle - 1e-9) ++row.oracle_violations;
      if (radius[i] / row.s_n <= cfg.cap) capped.points.push_back(rescaled[i]);
    }
    row.r_min_rescaled = r_min / row.s_n;
    row.r_pred = r_oracle / row.s_n;
    row.in_cap = capped.points.size();

    if (capped.points.empty()) {
      add_flag(row.flags, "empty-in-cap");
      row.hausdorff_to_shell = kInf;
    } else {
      const RadialProfile prof = radial_profile(capped);
      row.profile_spread = prof.spread;
      row.profile_bins = prof.nonempty_bins;
      const double inner = cfg.reference == Reference::shell ? row.r_pred : 0.0;
      if (inner > cfg.cap) {
        add_flag(row.flags, "reference-outside-cap");
        row.hausdorff_to_shell = kInf;
      } else {
        const PointCloud ref = shell_sample(inner, cfg.cap, k_ref, ref_seed);
        const CappedHausdorffReport rep = hausdorff_capped(capped, ref, cfg.cap);
        row.hausdorff_to_shell = rep.value;
        if (!rep.flag.empty()) add_flag(row.flags, rep.flag);
      }
    }
    if (row.oracle_violations > 0) add_flag(row.flags, "oracle-violation");
    series.rows.push_back(row);
  }
  return series;
}

namespace {

// log Im of the Mobius image of i under P^s, for real P.
double log_im(const HPoint& p, double s) {
  return std::log(uhp_point(power(p, s).matrix()).im);
}

// Golden-section minimization of g on [lo, hi].
template <class F>
double golden_min(F&& g, double lo, double hi, int iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

LemmaReport lemma_check(const LemmaConfig& cfg, std::span<const double> s_grid, std::size_t k,
                        std::uint64_t seed) {
  cfg.validate();
  require(!s_grid.empty(), "lemma-check: empty s grid");
  require(k >= 16, "lemma-check: need at least 16 boundary samples");
  for (double s : s_grid) require(std::isfinite(s) && s > 0.0, "lemma-check: s values must be positive");

  LemmaReport rep;
  rep.config = cfg;
  rep.boundary_samples = k;
  rep.s_grid.assign(s_grid.begin(), s_grid.end());
  rep.expected_slope = -2.0 * (cfg.d + cfg.epsilon);
  rep.hypothesis_holds = cfg.hypothesis_holds();

  const Mat2C q_half = geodesic_from_origin(UnitVec2::e1(), 0.5 * cfg.d).matrix();
  const auto small_sphere = [&](double theta) {
    return act(q_half, geodesic_from_origin(UnitVec2::normalized(std::cos(theta), std::sin(theta)), cfg.epsilon));
  };
  Stream stream(derive_seed(seed, "lemma-offset"), 0);
  const double offset = stream.uniform();
  const double step = std::numbers::pi / static_cast<double>(k);
  // Angles are taken modulo pi (v and -v give the same point).
  std::vector<HPoint> boundary(k);
  for (std::size_t j = 0; j < k; ++j) boundary[j] = small_sphere(step * (static_cast<double>(j) + offset));
  // Even-sized reference grid through theta = pi/2, the direction of fastest decay.
  const std::size_t k_ref = 2 * ((k + 1) / 2);
  std::vector<HPoint> big_sphere(k_ref);
  for (std::size_t j = 0; j < k_ref; ++j) {
    const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(k_ref);
    big_sphere[j] = j == k_ref / 2 ? geodesic_from_origin(UnitVec2::e2(), cfg.rho)
                                   : geodesic_from_origin(UnitVec2::normalized(std::cos(theta), std::sin(theta)), cfg.rho);
  }

  const std::size_t m = s_grid.size();
  rep.mu.resize(m);
  rep.reference.resize(m);
  rep.reference_measured.resize(m);
  parallel_for(m, [&](std::size_t i) {
    const double s = s_grid[i];
    std::size_t best = 0;
    double best_val = kInf;
    for (std::size_t j = 0; j < k; ++j) {
      const double v = log_im(boundary[j], s);
      if (v < best_val) {
        best_val = v;
        best = j;
      }
    }
    const double center = step * (static_cast<double>(best) + offset);
    const double refined = golden_min([&](double th) { return log_im(small_sphere(th), s); }, center - step,
                                      center + step, 80);
    rep.mu[i] = std::exp(std::min(best_val, refined));
    double ref_val = kInf;
    for (const HPoint& p : big_sphere) ref_val = std::min(ref_val, log_im(p, s));
    rep.reference_measured[i] = std::exp(ref_val);
    rep.reference[i] = std::exp(-2.0 * cfg.rho * s);
  });
  for (std::size_t i = 0; i < m; ++i) {
    rep.max_reference_error = std::max(
        rep.max_reference_error, std::abs(rep.reference_measured[i] - rep.reference[i]) / rep.reference[i]);
  }

  // Least squares of log mu against s over the upper half of the grid.
  const std::size_t first = m / 2;
  if (m - first >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto cnt = static_cast<double>(m - first);
    for (std::size_t i = first; i < m; ++i) {
      const double x = s_grid[i];
      const double y = std::log(rep.mu[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = cnt * sxx - sx * sx;
    rep.slope = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
  } else {
    rep.slope = std::numeric_limits<double>::quiet_NaN();
  }

  std::size_t start = m;
  for (std::size_t i = m; i-- > 0;) {
    if (!(rep.mu[i] < rep.reference[i])) break;
    start = i;
  }
  if (start < m) rep.sigma_hat = s_grid[start];
  return rep;
}

std::vector<LemmaReport> lemma_scan(std::span<const LemmaConfig> configs, std::span<const double> s_grid,
                                    std::size_t k, std::uint64_t seed) {
  std::vector<LemmaReport> out;
  out.reserve(configs.size());
  for (const LemmaConfig& cfg : configs) out.push_back(lemma_check(cfg, s_grid, k, seed));
  return out;
}

LineCheckReport verify_line_horosphere(const LineCheckConfig& cfg) {
  require(cfg.lines >= 1 && cfg.taus_per_line >= 1, "line check: need at least one line and one parameter");
  require(cfg.tau_max > 0.0 && cfg.base_log_norm >= 0.0, "line check: invalid parameter range");
  struct PerLine {
    double residual = 0.0;
    double spread = 0.0;
  };
  std::vector<PerLine> per(cfg.lines);
  parallel_for(cfg.lines, [&](std::size_t li) {
    Stream stream(cfg.seed, li);
    const double l = stream.uniform(-cfg.base_log_norm, cfg.base_log_norm);
    const Mat2C u = haar_su2(stream);
    const Mat2C v = haar_su2(stream);
    const UnitVec2 x = haar_unit(stream);
    const Line line = make_line(u * Mat2C::diagonal(std::exp(l), std::exp(-l)) * v, x);
    const Horosphere h = fit_horosphere(line);
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t j = 0; j < cfg.taus_per_line; ++j) {
      const cplx tau = std::polar(cfg.tau_max * std::sqrt(stream.uniform()), 2.0 * std::numbers::pi * stream.uniform());
      const Mat2C a = line.at(tau);
      const double level = std::exp(busemann(h.w, kappa(a, Kappa::gram)));
      per[li].residual = std::max(per[li].residual, std::abs(level - h.level) / h.level);
      const double b = busemann(h.w, kappa(a, Kappa::polar));
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
    per[li].spread = hi - lo;
  });
  LineCheckReport rep;
  rep.lines = cfg.lines;
  rep.taus_per_line = cfg.taus_per_line;
  rep.polar_spread_min = kInf;
  for (const PerLine& p : per) {
    rep.max_residual = std::max(rep.max_residual, p.residual);
    rep.polar_spread_min = std::min(rep.polar_spread_min, p.spread);
    rep.polar_spread_max = std::max(rep.polar_spread_max, p.spread);
  }
  return rep;
}

std::vector<SweepRecord> horosphere_sweep(const SurfaceSpec& f, const Horosphere& h0,
                                          std::span<const double> t_grid, double norm_bound,
                                          const Mat2C& phase) {
  h0.validate();
  require(norm_bound > 0.0, "sweep: norm bound must be positive");
  std::vector<SweepRecord> out;
  out.reserve(t_grid.size());
  for (const double t : t_grid) {
    SweepRecord rec;
    rec.t = t;
    const Horosphere h = h0.contracted(t);
    rec.level = h.level;
    const Line line = lift_horosphere(h, phase);
    const UniPoly poly = restrict_to_line(f, line);
    rec.degree = poly.degree();
    for (const cplx tau : poly_roots(poly.coeffs)) {
      SweepPoint pt;
      pt.tau = tau;
      const Mat2C a = line.at(tau);
      pt.norm = frobenius_norm(a);
      pt.escaped = !std::isfinite(pt.norm) || pt.norm > norm_bound;
      if (std::isfinite(pt.norm)) {
        const double scale = eval_scale(f, a);
        pt.residual = scale > 0.0 ? std::abs(eval(f, a)) / scale : 0.0;
        const Vec2C aw = dagger(a) * h.w.vec();
        pt.busemann = std::log(std::norm(aw.x1) + std::norm(aw.x2));
        pt.polar_radius = std::log(svd2(a).sigma1);
      }
      if (pt.escaped) ++rec.escaped;
      rec.points.push_back(pt);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace hamoeba::lab
