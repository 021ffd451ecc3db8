#include "hamoeba/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hamoeba/error.hpp"
#include "hamoeba/text.hpp"

namespace hamoeba::io {

using nlohmann::json;

namespace {

// JSON has no infinity; non-finite values become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

void expect_schema(const json& doc, const char* schema) {
  require(doc.is_object() && doc.contains("schema") && doc["schema"].is_string() &&
              doc["schema"].get<std::string>() == schema,
          std::string("expected schema '") + schema + "'");
}

double get_number(const json& v, const char* what) {
  require(v.is_number(), std::string(what) + ": expected a number");
  return v.get<double>();
}

}  // namespace

std::string cloud_to_json(const PointCloud& cloud) {
  json pts = json::array();
  for (const HPoint& p : cloud.points) pts.push_back({p.p11(), p.p12().real(), p.p12().imag(), p.p22()});
  json doc{{"schema", kCloudSchema},
           {"convention", std::string(to_string(cloud.meta.convention))},
           {"points", std::move(pts)},
           {"meta",
            {{"family", cloud.meta.family},
             {"n", cloud.meta.n},
             {"s", cloud.meta.s},
             {"seed", cloud.meta.seed},
             {"sample_count", cloud.meta.sample_count}}}};
  return doc.dump() + "\n";
}

PointCloud cloud_from_json(const std::string& text, std::optional<Kappa> expected) {
  const json doc = parse_json(text, "cloud");
  expect_schema(doc, kCloudSchema);
  require(doc.contains("convention") && doc["convention"].is_string(), "cloud: missing convention");
  PointCloud cloud;
  cloud.meta.convention = parse_kappa(doc["convention"].get<std::string>());
  if (expected && *expected != cloud.meta.convention) {
    fail(ErrorKind::validation, "convention mismatch: file is tagged '" +
                                    std::string(to_string(cloud.meta.convention)) + "' but '" +
                                    std::string(to_string(*expected)) + "' was requested");
  }
  if (doc.contains("meta") && doc["meta"].is_object()) {
    const json& m = doc["meta"];
    cloud.meta.family = m.value("family", "");
    cloud.meta.n = m.value("n", 0.0);
    cloud.meta.s = m.value("s", 1.0);
    cloud.meta.seed = m.value("seed", std::uint64_t{0});
    cloud.meta.sample_count = m.value("sample_count", std::size_t{0});
  }
  require(doc.contains("points") && doc["points"].is_array(), "cloud: missing points array");
  cloud.points.reserve(doc["points"].size());
  std::size_t index = 0;
  for (const json& p : doc["points"]) {
    require(p.is_array() && p.size() == 4, "cloud: point " + std::to_string(index) + " must have 4 entries");
    try {
      cloud.points.push_back(HPoint::from_entries(get_number(p[0], "p11"), get_number(p[3], "p22"),
                                                  {get_number(p[1], "re p12"), get_number(p[2], "im p12")}, 1e-6));
    } catch (const Error& e) {
      fail(e.kind(), "cloud: point " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return cloud;
}

std::string matrices_to_json(const MatrixSet& set) {
  json mats = json::array();
  for (const Mat2C& a : set.matrices) {
    mats.push_back({a.a11.real(), a.a11.imag(), a.a12.real(), a.a12.imag(), a.a21.real(), a.a21.imag(),
                    a.a22.real(), a.a22.imag()});
  }
  json doc{{"schema", kMatricesSchema}, {"surface", set.surface}, {"matrices", std::move(mats)},
           {"meta", set.meta}};
  return doc.dump() + "\n";
}

MatrixSet matrices_from_json(const std::string& text) {
  const json doc = parse_json(text, "matrices");
  expect_schema(doc, kMatricesSchema);
  MatrixSet set;
  set.surface = doc.value("surface", "");
  if (doc.contains("meta") && doc["meta"].is_object()) {
    for (const auto& [k, v] : doc["meta"].items()) set.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  require(doc.contains("matrices") && doc["matrices"].is_array(), "matrices: missing matrices array");
  for (const json& m : doc["matrices"]) {
    require(m.is_array() && m.size() == 8, "matrices: each entry needs 8 numbers");
    std::array<double, 8> v{};
    for (std::size_t i = 0; i < 8; ++i) v[i] = get_number(m[i], "matrix entry");
    set.matrices.push_back({{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}});
  }
  return set;
}

std::string series_to_csv(const lab::LimitSeries& series) {
  std::string out = "n,s_n,samples,r_min_rescaled,hausdorff_to_shell,flags\n";
  for (const lab::LimitRow& r : series.rows) {
    out += fmt(r.n) + "," + fmt(r.s_n) + "," + std::to_string(r.samples) + "," + fmt(r.r_min_rescaled) + "," +
           fmt(r.hausdorff_to_shell) + "," + r.flags + "\n";
  }
  return out;
}

std::string series_to_json(const lab::LimitSeries& series) {
  const lab::LimitConfig& c = series.config;
  json rows = json::array();
  for (const lab::LimitRow& r : series.rows) {
    rows.push_back({{"n", r.n},
                    {"s_n", r.s_n},
                    {"level", complex_pair(r.level)},
                    {"samples", r.samples},
                    {"in_cap", r.in_cap},
                    {"r_min_rescaled", number(r.r_min_rescaled)},
                    {"r_pred", number(r.r_pred)},
                    {"hausdorff_to_shell", number(r.hausdorff_to_shell)},
                    {"oracle_violations", r.oracle_violations},
                    {"profile_spread", r.profile_spread},
                    {"profile_bins", r.profile_bins},
                    {"flags", r.flags}});
  }
  json doc{{"schema", kLimitSchema},
           {"convention", std::string(to_string(c.kappa))},
           {"family", c.family.name()},
           {"r", c.family.r},
           {"c", complex_pair(c.family.c)},
           {"scaling", c.scaling.name()},
           {"cap", c.cap},
           {"samples", c.samples},
           {"reference", c.reference == lab::Reference::shell ? "shell" : "ball"},
           {"conjugate", c.conjugate},
           {"seed", c.seed},
           {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string lemma_to_json(const lab::LemmaReport& rep) {
  json doc{{"schema", kLemmaSchema},
           {"d", rep.config.d},
           {"epsilon", rep.config.epsilon},
           {"rho", rep.config.rho},
           {"hypothesis_holds", rep.hypothesis_holds},
           {"boundary_samples", rep.boundary_samples},
           {"s", rep.s_grid},
           {"mu", rep.mu},
           {"reference", rep.reference},
           {"reference_measured", rep.reference_measured},
           {"max_reference_error", rep.max_reference_error},
           {"slope", number(rep.slope)},
           {"expected_slope", rep.expected_slope},
           {"sigma_found", rep.sigma_hat.has_value()},
           {"sigma_hat", rep.sigma_hat ? json(*rep.sigma_hat) : json("not found")}};
  return doc.dump(2) + "\n";
}

std::string lemma_to_csv(const lab::LemmaReport& rep) {
  std::string out = "s,mu,reference,reference_measured\n";
  for (std::size_t i = 0; i < rep.s_grid.size(); ++i) {
    out += fmt(rep.s_grid[i]) + "," + fmt(rep.mu[i]) + "," + fmt(rep.reference[i]) + "," +
           fmt(rep.reference_measured[i]) + "\n";
  }
  return out;
}

std::string lemma_scan_to_json(const std::vector<lab::LemmaReport>& reps) {
  json rows = json::array();
  for (const lab::LemmaReport& r : reps) {
    rows.push_back({{"d", r.config.d},
                    {"epsilon", r.config.epsilon},
                    {"rho", r.config.rho},
                    {"hypothesis_holds", r.hypothesis_holds},
                    {"crossing_expected", r.config.d + r.config.epsilon > r.config.rho},
                    {"sigma_found", r.sigma_hat.has_value()},
                    {"sigma_hat", r.sigma_hat ? json(*r.sigma_hat) : json("not found")},
                    {"slope", number(r.slope)},
                    {"expected_slope", r.expected_slope}});
  }
  json doc{{"schema", kLemmaScanSchema}, {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string line_check_to_json(const lab::LineCheckReport& rep, const lab::LineCheckConfig& cfg) {
  json doc{{"schema", kLineCheckSchema},
           {"lines", rep.lines},
           {"taus_per_line", rep.taus_per_line},
           {"tau_max", cfg.tau_max},
           {"base_log_norm", cfg.base_log_norm},
           {"seed", cfg.seed},
           {"gram_max_relative_residual", rep.max_residual},
           {"polar_busemann_spread_min", rep.polar_spread_min},
           {"polar_busemann_spread_max", rep.polar_spread_max}};
  return doc.dump(2) + "\n";
}

std::string sweep_to_json(const std::vector<lab::SweepRecord>& records, const SurfaceSpec& f,
                          const Horosphere& h0) {
  json rows = json::array();
  for (const lab::SweepRecord& r : records) {
    json pts = json::array();
    for (const lab::SweepPoint& p : r.points) {
      pts.push_back({{"tau", complex_pair(p.tau)},
                     {"norm", number(p.norm)},
                     {"residual", number(p.residual)},
                     {"busemann", number(p.busemann)},
                     {"polar_radius", number(p.polar_radius)},
                     {"escaped", p.escaped}});
    }
    rows.push_back({{"t", r.t},
                    {"level", r.level},
                    {"degree", r.degree},
                    {"root_count", r.points.size()},
                    {"escaped", r.escaped},
                    {"roots", std::move(pts)}});
  }
  json doc{{"schema", kSweepSchema},
           {"surface", f.descriptor()},
           {"w", {complex_pair(h0.w.u1()), complex_pair(h0.w.u2())}},
           {"level", h0.level},
           {"records", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string steer_to_json(const SteerRequest& req, const SteerResult& res) {
  const auto mat = [](const Mat2C& a) {
    return json::array({complex_pair(a.a11), complex_pair(a.a12), complex_pair(a.a21), complex_pair(a.a22)});
  };
  json doc{{"schema", kSteerSchema},
           {"c", complex_pair(req.c)},
           {"lambda", req.lambda},
           {"mode", req.mode == SteerMode::image ? "image" : "kernel"},
           {"line", {complex_pair(req.line.u1()), complex_pair(req.line.u2())}},
           {"base", mat(res.base)},
           {"b", mat(res.b)},
           {"direction", mat(res.direction)},
           {"tau", complex_pair(res.tau)},
           {"trace_residual", res.trace_residual},
           {"det_residual", res.det_residual},
           {"log_norm", res.log_norm},
           {"target_log_norm", res.target_log_norm},
           {"gap", res.gap}};
  return doc.dump(2) + "\n";
}

std::string hausdorff_to_json(const CappedHausdorffReport& rep) {
  json doc{{"schema", kHausdorffSchema},
           {"cap", rep.cap},
           {"directed_xy", number(rep.directed_xy)},
           {"directed_yx", number(rep.directed_yx)},
           {"value", number(rep.value)},
           {"count_x", rep.count_x},
           {"count_y", rep.count_y},
           {"flag", rep.flag}};
  return doc.dump(2) + "\n";
}

std::string ball_to_json(const PointCloud& cloud) {
  json pts = json::array();
  for (const HPoint& p : cloud.points) {
    const auto b = to_poincare_ball(p);
    pts.push_back({b[0], b[1], b[2]});
  }
  json doc{{"schema", kBallSchema},
           {"chart", "poincare ball (visual chart, not the computation metric)"},
           {"convention", std::string(to_string(cloud.meta.convention))},
           {"points", std::move(pts)}};
  return doc.dump() + "\n";
}

std::string ball_to_csv(const PointCloud& cloud) {
  std::string out = "# poincare ball: visual chart, not the computation metric\nx,y,z\n";
  for (const HPoint& p : cloud.points) {
    const auto b = to_poincare_ball(p);
    out += fmt(b[0]) + "," + fmt(b[1]) + "," + fmt(b[2]) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write '" + path.string() + "'");
  out << text;
  require(static_cast<bool>(out), "write failed for '" + path.string() + "'");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::numerical, "sha256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return os.str();
}

std::string manifest_to_json(const RunManifest& m) {
  json outputs = json::array();
  for (const auto& [path, digest] : m.outputs) outputs.push_back({{"path", path}, {"sha256", digest}});
  json doc{{"schema", kManifestSchema},
           {"tool", "hamoeba"},
           {"version", m.tool_version},
           {"command", m.command},
           {"argv", m.argv},
           {"config", m.config},
           {"seed", m.seed ? json(*m.seed) : json(nullptr)},
           {"started", m.started},
           {"finished", m.finished},
           {"outputs", std::move(outputs)}};
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hamoeba::io
