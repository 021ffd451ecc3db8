#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hamoeba/error.hpp"
#include "hamoeba/lab.hpp"
#include "hamoeba/text.hpp"

using namespace hamoeba;
using namespace hamoeba::lab;

namespace {

// Minimum of Im(P^s . i) over the epsilon-sphere about diag(e^d, e^-d),
// scanned densely. Each sphere point is written in closed form and its
// imaginary part comes from the eigen-decomposition formula.
double brute_mu(const LemmaConfig& cfg, double s, int k) {
  double best = INFINITY;
  for (int j = 0; j < k; ++j) {
    const double th = std::numbers::pi * j / k;
    const double cs = std::cos(th), sn = std::sin(th);
    const double ep = std::exp(cfg.epsilon), em = std::exp(-cfg.epsilon);
    const double g11 = ep * cs * cs + em * sn * sn;
    const double g22 = ep * sn * sn + em * cs * cs;
    const double g12 = (ep - em) * cs * sn;
    const double a = std::exp(cfg.d) * g11;
    const double b = g12;
    const double c = std::exp(-cfg.d) * g22;
    const double r = std::asinh(std::hypot(0.5 * (a - c), b));
    const double phi = 0.5 * std::atan2(2.0 * b, a - c);
    best = std::min(best, closed_form_im(Projector2::from_angle(phi), r, s));
  }
  return best;
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("families and scalings") {
  CHECK(Family::parse("trace", 2.0, 0.0).level(10.0) == cplx(100.0));
  CHECK(Family::parse("power", 1.0, 0.0).kind == FamilyKind::trace_power);
  CHECK(Family::parse("exp", 1.0, 0.0).level(2.0).real() == doctest::Approx(std::exp(2.0)));
  CHECK(Family::parse("const", 1.0, cplx(1, 2)).level(99.0) == cplx(1, 2));
  CHECK_THROWS_AS(Family::parse("cubic", 1.0, 0.0), Error);
  CHECK_THROWS_AS(Family::parse("trace", -1.0, 0.0), Error);

  CHECK(Scaling::parse("log").at(std::exp(3.0)) == doctest::Approx(3.0));
  const Scaling p = Scaling::parse("pow:0.5");
  CHECK(p.kind == ScalingKind::power);
  CHECK(p.at(16.0) == doctest::Approx(4.0));
  CHECK(Scaling::parse(p.name()).exponent == 0.5);
  CHECK_THROWS_AS(Scaling::parse("pow:-1"), Error);
  CHECK_THROWS_AS(Scaling::parse("linear"), Error);
}

TEST_CASE("limit configuration validation") {
  LimitConfig cfg;
  cfg.n_list = {100.0, 10.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n_list = {1.0};  // log 1 = 0
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n_list = {10.0};
  cfg.samples = 10;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.samples = 1000;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("small tropical limit run") {
  LimitConfig cfg;
  cfg.n_list = {100.0, 1000.0};
  cfg.samples = 4000;
  cfg.seed = 5;
  const LimitSeries a = tropical_limit_run(cfg);
  REQUIRE(a.rows.size() == 2);
  for (const LimitRow& row : a.rows) {
    CHECK(row.oracle_violations == 0);
    CHECK(row.flags.empty());
    CHECK(row.s_n == doctest::Approx(std::log(row.n)));
    // Real level c > 2: the removed ball has radius arccosh(c / 2).
    CHECK(row.r_pred == doctest::Approx(std::acosh(0.5 * row.n) / std::log(row.n)).epsilon(1e-10));
    CHECK(row.r_min_rescaled >= row.r_pred - 1e-9);
    CHECK(row.r_min_rescaled <= row.r_pred + 0.3);
    CHECK(std::isfinite(row.hausdorff_to_shell));
    CHECK(row.in_cap > 0);
  }
  const LimitSeries b = tropical_limit_run(cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.rows[i].hausdorff_to_shell == b.rows[i].hausdorff_to_shell);
    CHECK(a.rows[i].r_min_rescaled == b.rows[i].r_min_rescaled);
  }
}

TEST_CASE("empty cap is flagged") {
  LimitConfig cfg;
  cfg.family = Family::parse("exp", 1.0, 0.0);
  cfg.n_list = {10.0};
  cfg.samples = 1000;
  const LimitSeries s = tropical_limit_run(cfg);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].flags.find("empty-in-cap") != std::string::npos);
  CHECK(std::isinf(s.rows[0].hausdorff_to_shell));
  CHECK(s.rows[0].oracle_violations == 0);
}

TEST_CASE("lemma check against a dense scan") {
  const LemmaConfig cfg{1.0, 0.5, 1.2};
  const auto grid = parse_range("10:40:0.5");
  const LemmaReport rep = lemma_check(cfg, grid, 2000, 8);
  REQUIRE(rep.mu.size() == grid.size());
  CHECK(rep.max_reference_error <= 1e-9);
  CHECK(rep.expected_slope == -3.0);
  CHECK(std::abs(rep.slope - rep.expected_slope) <= 0.02 * 3.0);
  CHECK(rep.hypothesis_holds);
  REQUIRE(rep.sigma_hat.has_value());
  for (std::size_t i = 0; i < grid.size(); i += 10) {
    const double want = brute_mu(cfg, grid[i], 200000);
    CHECK(rep.mu[i] <= want * (1.0 + 1e-9));
    CHECK(rep.mu[i] >= want * (1.0 - 1e-4));
  }
  CHECK_THROWS_AS(lemma_check(cfg, grid, 8, 1), Error);
  CHECK_THROWS_AS(lemma_check({1.0, 0.0, 1.0}, grid, 100, 1), Error);

  const std::vector<LemmaConfig> cfgs{{1.0, 0.5, 1.2}, {1.0, 0.1, 1.5}};
  const auto scan = lemma_scan(cfgs, grid, 200, 8);
  CHECK(scan.size() == 2);
  CHECK_FALSE(scan[1].sigma_hat.has_value());
}

TEST_CASE("line amoebas are horospheres under gram") {
  const LineCheckReport rep = verify_line_horosphere({10, 200, 10.0, 2.0, 9});
  CHECK(rep.lines == 10);
  CHECK(rep.max_residual <= 1e-9);
  CHECK(rep.polar_spread_min > 0.0);
}

TEST_CASE("horosphere sweep on a trace surface") {
  const SurfaceSpec f = SurfaceSpec::trace(3.0);
  const Horosphere h0{UnitVec2::normalized(1.0, 1.0), 1.0};
  const std::vector<double> ts{1.0, 2.0, 3.0};
  const auto recs = horosphere_sweep(f, h0, ts, 1e8);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].level == 1.0);
  for (const SweepRecord& rec : recs) {
    CHECK(rec.degree <= 1);
    for (const SweepPoint& p : rec.points) {
      if (p.escaped) continue;
      CHECK(p.residual <= 1e-12);
      CHECK(p.busemann == doctest::Approx(std::log(rec.level)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(horosphere_sweep(f, h0, ts, -1.0), Error);
}

TEST_CASE("sweep through O with a generic lift has one root per t") {
  // With w = e2 and no phase the lifted direction is traceless, so the trace
  // is constant along every line; a generic SU(2) phase restores one root.
  const SurfaceSpec f = SurfaceSpec::trace(3.0);
  const Horosphere h0{UnitVec2::e2(), 1.0};
  const auto grid = parse_range("1:5:0.25");
  for (const SweepRecord& rec : horosphere_sweep(f, h0, grid, 1e12)) CHECK(rec.points.empty());
  Stream stream(derive_seed(11, "sweep-phase"), 0);
  const auto recs = horosphere_sweep(f, h0, grid, 1e12, haar_su2(stream));
  double prev = INFINITY;
  for (const SweepRecord& rec : recs) {
    REQUIRE(rec.points.size() == 1);
    CHECK(rec.degree == 1);
    const SweepPoint& p = rec.points.front();
    CHECK_FALSE(p.escaped);
    CHECK(p.busemann < prev);
    prev = p.busemann;
  }
}

}  // TEST_SUITE
