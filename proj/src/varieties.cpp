#include "hamoeba/varieties.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

#include "hamoeba/error.hpp"
#include "hamoeba/parallel.hpp"
#include "hamoeba/text.hpp"

namespace hamoeba {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// Mat2C as a 4-tuple in monomial exponent order.
std::array<cplx, 4> entries(const Mat2C& a) { return {a.a11, a.a12, a.a21, a.a22}; }

bool near_unit_det(const Mat2C& a, double tol) {
  return std::abs(det(a) - 1.0) <= tol * std::max(1.0, frobenius_norm_sq(a));
}

}  // namespace

SurfaceSpec::SurfaceSpec(std::vector<Monomial> monomials, std::string family, std::string parameter,
                         int max_degree)
    : family_(std::move(family)), parameter_(std::move(parameter)), max_degree_(max_degree) {
  require(max_degree >= 1, "surface: maximum degree must be at least 1");
  std::map<std::array<int, 4>, cplx> merged;
  for (const Monomial& m : monomials) {
    for (int e : m.exponents) require(e >= 0, "surface: exponents must be non-negative");
    require(std::isfinite(m.coefficient.real()) && std::isfinite(m.coefficient.imag()),
            "surface: coefficients must be finite");
    merged[m.exponents] += m.coefficient;
  }
  for (const auto& [exps, coeff] : merged) {
    if (coeff == cplx{}) continue;
    Monomial m{exps, coeff};
    degree_ = std::max(degree_, m.degree());
    monomials_.push_back(m);
  }
  require(!monomials_.empty(), "surface: polynomial is identically zero");
  require(degree_ <= max_degree_, "surface: degree " + std::to_string(degree_) +
                                      " exceeds the maximum " + std::to_string(max_degree_));
}

SurfaceSpec SurfaceSpec::trace(cplx c) {
  return SurfaceSpec({{{1, 0, 0, 0}, 1.0}, {{0, 0, 0, 1}, 1.0}, {{0, 0, 0, 0}, -c}}, "trace",
                     format_complex(c));
}

SurfaceSpec SurfaceSpec::determinant() {
  return SurfaceSpec({{{1, 0, 0, 1}, 1.0}, {{0, 1, 1, 0}, -1.0}, {{0, 0, 0, 0}, -1.0}}, "det", "");
}

SurfaceSpec SurfaceSpec::from_table(std::istream& in, std::string family) {
  std::vector<Monomial> monomials;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "coefficient table line " + std::to_string(line_no);
    require(tokens.size() == 5 || tokens.size() == 6, where + ": expected 'e11 e12 e21 e22 re [im]'");
    Monomial m;
    for (int i = 0; i < 4; ++i) {
      const double e = parse_double(tokens[static_cast<std::size_t>(i)]);
      require(e >= 0.0 && e == std::floor(e) && e <= 64.0, where + ": exponents must be small integers");
      m.exponents[static_cast<std::size_t>(i)] = static_cast<int>(e);
    }
    m.coefficient = {parse_double(tokens[4]), tokens.size() == 6 ? parse_double(tokens[5]) : 0.0};
    monomials.push_back(m);
  }
  return SurfaceSpec(std::move(monomials), std::move(family), "");
}

SurfaceSpec SurfaceSpec::parse(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  require(colon != std::string_view::npos,
          "surface descriptor must be 'trace:<complex>' or 'poly:<file>', got '" + std::string(descriptor) + "'");
  const std::string_view kind = descriptor.substr(0, colon);
  const std::string_view arg = descriptor.substr(colon + 1);
  if (kind == "trace") return trace(parse_complex(arg));
  if (kind == "poly") {
    std::ifstream in{std::string(arg)};
    require(static_cast<bool>(in), "cannot open coefficient table '" + std::string(arg) + "'");
    SurfaceSpec f = from_table(in, "poly");
    f.parameter_ = std::string(arg);
    return f;
  }
  fail(ErrorKind::validation, "unknown surface family '" + std::string(kind) + "'");
}

std::string SurfaceSpec::descriptor() const {
  return parameter_.empty() ? family_ : family_ + ":" + parameter_;
}

SurfaceSpec operator*(const SurfaceSpec& f, const SurfaceSpec& g) {
  std::vector<Monomial> out;
  out.reserve(f.monomials_.size() * g.monomials_.size());
  for (const Monomial& a : f.monomials_) {
    for (const Monomial& b : g.monomials_) {
      Monomial m;
      for (std::size_t i = 0; i < 4; ++i) m.exponents[i] = a.exponents[i] + b.exponents[i];
      m.coefficient = a.coefficient * b.coefficient;
      out.push_back(m);
    }
  }
  return SurfaceSpec(std::move(out), "product", f.descriptor() + "*" + g.descriptor(),
                     std::max({f.max_degree_, g.max_degree_, f.degree_ + g.degree_}));
}

cplx eval(const SurfaceSpec& f, const Mat2C& a) {
  const int deg = f.degree();
  const auto e = entries(a);
  std::array<std::vector<cplx>, 4> pw;
  for (std::size_t i = 0; i < 4; ++i) {
    pw[i].assign(static_cast<std::size_t>(deg) + 1, 1.0);
    for (int k = 1; k <= deg; ++k) pw[i][static_cast<std::size_t>(k)] = pw[i][static_cast<std::size_t>(k - 1)] * e[i];
  }
  cplx sum{};
  for (const Monomial& m : f.monomials()) {
    cplx term = m.coefficient;
    for (std::size_t i = 0; i < 4; ++i) term *= pw[i][static_cast<std::size_t>(m.exponents[i])];
    sum += term;
  }
  return sum;
}

double eval_scale(const SurfaceSpec& f, const Mat2C& a) {
  const auto e = entries(a);
  double sum = 0.0;
  for (const Monomial& m : f.monomials()) {
    double term = std::abs(m.coefficient);
    for (std::size_t i = 0; i < 4; ++i) term *= std::pow(std::abs(e[i]), m.exponents[i]);
    sum += term;
  }
  return sum;
}

Line make_line(const Mat2C& base, const UnitVec2& x) {
  require(is_finite(base), "make_line: base has non-finite entries");
  require(near_unit_det(base, 1e-10), "make_line: base must have determinant 1");
  const Vec2C v = adj(base) * x.vec();
  return {base, x, {-v.x2, v.x1}};
}

Line lift_horosphere(const Horosphere& h, const Mat2C& phase) {
  h.validate();
  const Mat2C check = dagger(phase) * phase - Mat2C::identity();
  require(frobenius_norm(check) <= 1e-10 && std::abs(det(phase) - 1.0) <= 1e-10,
          "lift_horosphere: phase must lie in SU(2)");
  const double sc = std::sqrt(h.level);
  const Mat2C proj = h.w.projector();
  const Mat2C a0 = cplx(sc) * proj + cplx(1.0 / sc) * (Mat2C::identity() - proj);
  // For V in SU(2), J adj(A0 V) = V^T J adj(A0), so the right action keeps
  // the direction's column and the horosphere.
  return make_line(a0 * phase, h.w.orthogonal());
}

Horosphere fit_horosphere(const Line& line) {
  const UnitVec2 w = line.x.orthogonal();
  const Vec2C v = dagger(line.base) * w.vec();
  return {w, std::norm(v.x1) + std::norm(v.x2)};
}

cplx UniPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly restrict_to_line(const SurfaceSpec& f, const Line& line) {
  const Mat2C n = line.direction();
  const int deg = f.degree();
  const auto m = static_cast<std::size_t>(deg) + 1;
  const double rho = std::max(1.0, frobenius_norm(line.base)) / frobenius_norm(n);
  std::vector<cplx> values(m);
  std::vector<cplx> nodes(m);
  UniPoly out;
  for (std::size_t k = 0; k < m; ++k) {
    nodes[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    const Mat2C a = line.at(rho * nodes[k]);
    values[k] = eval(f, a);
    out.scale = std::max(out.scale, eval_scale(f, a));
  }
  out.coeffs.resize(m);
  double rho_j = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc{};
    for (std::size_t k = 0; k < m; ++k) acc += values[k] * std::conj(nodes[(j * k) % m]);
    out.coeffs[j] = acc / (static_cast<double>(m) * rho_j);
    rho_j *= rho;
  }
  // Trim coefficients that are round-off at the node radius.
  while (!out.coeffs.empty()) {
    const double at_radius = std::abs(out.coeffs.back()) * std::pow(rho, static_cast<double>(out.coeffs.size() - 1));
    if (at_radius > 1e-11 * out.scale) break;
    out.coeffs.pop_back();
  }
  return out;
}

double relative_residual(std::span<const cplx> coeffs, cplx z) {
  cplx acc{};
  double scale = 0.0;
  const double az = std::abs(z);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
    scale = scale * az + std::abs(*it);
  }
  return scale == 0.0 ? 0.0 : std::abs(acc) / scale;
}

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
  std::size_t len = coeffs.size();
  while (len > 0 && coeffs[len - 1] == cplx{}) --len;
  if (len == 0) fail(ErrorKind::infeasible, "line contained in surface");
  for (std::size_t i = 0; i < len; ++i) {
    if (!std::isfinite(coeffs[i].real()) || !std::isfinite(coeffs[i].imag())) {
      fail(ErrorKind::numerical, "poly_roots: non-finite coefficient");
    }
  }
  std::vector<cplx> roots;
  std::size_t lo = 0;
  while (lo < len - 1 && coeffs[lo] == cplx{}) {
    roots.emplace_back(0.0);
    ++lo;
  }
  const std::size_t n = len - 1 - lo;
  if (n == 0) return roots;
  std::vector<cplx> a(n + 1);
  for (std::size_t j = 0; j <= n; ++j) a[j] = coeffs[lo + j] / coeffs[len - 1];
  if (n == 1) {
    roots.push_back(-a[0]);
    return roots;
  }

  const auto residual = [&](cplx z) { return relative_residual(a, z); };
  const auto horner = [&](cplx z, cplx& p, cplx& dp) {
    p = a[n];
    dp = 0.0;
    for (std::size_t j = n; j-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[j];
    }
  };

  std::vector<cplx> z(n);
  const double radius = std::pow(std::abs(a[0]), 1.0 / static_cast<double>(n));
  const double r0 = radius > 0.0 ? radius : 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = std::polar(r0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
  }

  // One Gauss-Seidel Aberth sweep; returns false when nothing moved.
  const auto sweep = [&](std::vector<bool>& done, bool guarded) {
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      cplx p;
      cplx dp;
      horner(z[k], p, dp);
      if (p == cplx{}) {
        done[k] = true;
        continue;
      }
      cplx s{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      cplx corr;
      if (dp == cplx{}) {
        corr = -1e-8 * (1.0 + std::abs(z[k])) * cplx(1.0, 1.0);
      } else {
        const cplx w = p / dp;
        corr = w / (1.0 - w * s);
      }
      const cplx next = z[k] - corr;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) continue;
      if (guarded && residual(next) > residual(z[k])) continue;
      z[k] = next;
      moved = true;
    }
    return moved;
  };

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 500; ++iter) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (!done[k] && residual(z[k]) <= 8.0 * kEps) done[k] = true;
      all = all && done[k];
    }
    if (all) break;
    if (!sweep(done, false)) break;
  }
  // Polish: two guarded Aberth sweeps on every root, then one Weierstrass
  // (derivative-free) step kept only if it lowers the residual.
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<bool> none(n, false);
    sweep(none, true);
  }
  for (std::size_t k = 0; k < n; ++k) {
    cplx denom = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) denom *= z[k] - z[j];
    }
    if (denom == cplx{}) continue;
    cplx p;
    cplx dp;
    horner(z[k], p, dp);
    const cplx next = z[k] - p / denom;
    if (std::isfinite(next.real()) && std::isfinite(next.imag()) && residual(next) < residual(z[k])) z[k] = next;
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<Mat2C> sample_trace_surface(cplx c, LogWindow window, std::size_t k, std::uint64_t seed) {
  require(k >= 1, "sample_trace_surface: need at least one sample");
  require(window.lo <= window.hi, "sample_trace_surface: empty log-norm window");
  require(std::abs(window.lo) <= 300.0 && std::abs(window.hi) <= 300.0,
          "sample_trace_surface: log-norm window must lie within [-300, 300]");
  std::vector<Mat2C> out(k);
  parallel_for(k, [&](std::size_t i) {
    Stream stream(seed, i);
    while (true) {
      const double lp = stream.uniform(window.lo, window.hi);
      const double ap = stream.uniform(0.0, 2.0 * std::numbers::pi);
      const double lq = stream.uniform(window.lo, window.hi);
      const double aq = stream.uniform(0.0, 2.0 * std::numbers::pi);
      const cplx q = std::polar(std::exp(lq), aq);
      if (q == cplx{}) continue;
      const cplx p = std::polar(std::exp(lp), ap);
      const cplx u = (p * (c - p) - 1.0) / q;
      out[i] = {p, q, u, c - p};
      if (!is_finite(out[i])) fail(ErrorKind::numerical, "sample_trace_surface: non-finite sample");
      return;
    }
  });
  return out;
}

SurfaceSample sample_surface_via_lines(const SurfaceSpec& f, std::size_t k, LogWindow window,
                                       std::uint64_t seed, std::size_t retry_budget) {
  require(k >= 1, "sample_surface_via_lines: need at least one sample");
  require(f.degree() >= 1, "sample_surface_via_lines: surface must have degree at least 1");
  require(window.lo <= window.hi, "sample_surface_via_lines: empty log-norm window");
  const std::size_t budget = retry_budget > 0 ? retry_budget : 50 * k + 100;
  SurfaceSample out;
  for (std::size_t t = 0; t < budget && out.points.size() < k; ++t) {
    Stream stream(seed, t);
    const double l = stream.uniform(window.lo, window.hi);
    const Mat2C u = haar_su2(stream);
    const Mat2C v = haar_su2(stream);
    const UnitVec2 x = haar_unit(stream);
    const Line line = make_line(u * Mat2C::diagonal(std::exp(l), std::exp(-l)) * v, x);
    ++out.lines_tried;
    const UniPoly poly = restrict_to_line(f, line);
    for (const cplx tau : poly_roots(poly.coeffs)) {
      const Mat2C a = line.at(tau);
      const double bound = 1e-9 * (1.0 + std::pow(frobenius_norm(a), f.degree()));
      if (is_finite(a) && std::abs(eval(f, a)) <= bound) {
        if (out.points.size() < k) out.points.push_back(a);
      } else {
        ++out.roots_rejected;
      }
    }
  }
  if (out.points.size() < k) {
    out.note = "found " + std::to_string(out.points.size()) + " of " + std::to_string(k) +
               " points after " + std::to_string(out.lines_tried) + " lines";
  }
  return out;
}

void SteerRequest::validate() const {
  require(std::isfinite(c.real()) && std::isfinite(c.imag()) && std::abs(c) > 2.0,
          "steer: trace level must satisfy |c| > 2");
  require(std::isfinite(lambda) && lambda >= 1.0, "steer: lambda must be at least 1");
}

double steer_gap(const Mat2C& a, const UnitVec2& line, SteerMode mode) {
  const double norm = frobenius_norm(a);
  require(norm > 0.0, "steer_gap: zero matrix");
  const Mat2C hat = cplx(1.0 / norm) * a;
  if (mode == SteerMode::image) {
    // Row vector l_perp^dagger a: the part of the image outside L.
    const UnitVec2 lp = line.orthogonal();
    const Vec2C row = transpose(hat) * Vec2C{std::conj(lp.u1()), std::conj(lp.u2())};
    return std::sqrt(std::norm(row.x1) + std::norm(row.x2));
  }
  const Vec2C col = hat * line.vec();
  return std::sqrt(std::norm(col.x1) + std::norm(col.x2));
}

SteerResult steer(const SteerRequest& req) {
  req.validate();
  const cplx c = req.c;
  const cplx disc = std::sqrt(c * c - 4.0);
  const cplx big = std::abs(c + disc) >= std::abs(c - disc) ? 0.5 * (c + disc) : 0.5 * (c - disc);
  const Mat2C a0 = Mat2C::diagonal(big, 1.0 / big);

  // Unitary U with U e1 = l (image mode) or U e2 = k (kernel mode); U is an
  // isometry for the Frobenius norm, so norms are computed on the diagonal form.
  const UnitVec2& l = req.line;
  Mat2C u;
  Mat2C e;
  if (req.mode == SteerMode::image) {
    u = {l.u1(), -std::conj(l.u2()), l.u2(), std::conj(l.u1())};
    e = {0.0, 1.0, 0.0, 0.0};
  } else {
    u = {std::conj(l.u2()), l.u1(), -std::conj(l.u1()), l.u2()};
    e = {0.0, 0.0, 1.0, 0.0};
  }
  const double norm0_sq = frobenius_norm_sq(a0);
  const double target = 0.5 * req.lambda * std::log(norm0_sq);
  const double tau_sq = std::exp(2.0 * target) - norm0_sq;
  const double tau = std::sqrt(std::max(tau_sq, 0.0));
  require_finite(tau, "steer: direction scale");

  SteerResult out;
  const Mat2C ud = dagger(u);
  out.base = u * a0 * ud;
  out.direction = u * e * ud;
  out.tau = tau;
  out.b = u * (a0 + cplx(tau) * e) * ud;
  const double bnorm = frobenius_norm(out.b);
  out.trace_residual = std::abs(trace(out.b) - c) / std::abs(c);
  out.det_residual = std::abs(det(out.b) - 1.0) / std::max(1.0, bnorm * bnorm);
  out.log_norm = std::log(bnorm);
  out.target_log_norm = target;
  out.gap = steer_gap(out.b, l, req.mode);
  return out;
}

}  // namespace hamoeba
