#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamoeba/amoeba.hpp"
#include "hamoeba/hdist.hpp"
#include "hamoeba/lab.hpp"
#include "hamoeba/varieties.hpp"

namespace hamoeba::io {

inline constexpr const char* kCloudSchema = "hamoeba.cloud.v1";
inline constexpr const char* kMatricesSchema = "hamoeba.matrices.v1";
inline constexpr const char* kLimitSchema = "hamoeba.limit.v1";
inline constexpr const char* kLemmaSchema = "hamoeba.lemma.v1";
inline constexpr const char* kLemmaScanSchema = "hamoeba.lemma-scan.v1";
inline constexpr const char* kLineCheckSchema = "hamoeba.line-check.v1";
inline constexpr const char* kSweepSchema = "hamoeba.sweep.v1";
inline constexpr const char* kSteerSchema = "hamoeba.steer.v1";
inline constexpr const char* kHausdorffSchema = "hamoeba.hausdorff.v1";
inline constexpr const char* kBallSchema = "hamoeba.ball.v1";
inline constexpr const char* kManifestSchema = "hamoeba.manifest.v1";

/// Points are [p11, re p12, im p12, p22].
std::string cloud_to_json(const PointCloud& cloud);
/// Re-validates every point (det within 1e-6, then renormalized). When
/// `expected` is set, a different convention tag is an error; nothing is
/// converted silently.
PointCloud cloud_from_json(const std::string& text, std::optional<Kappa> expected = std::nullopt);

struct MatrixSet {
  std::vector<Mat2C> matrices;
  std::string surface;
  std::map<std::string, std::string> meta;
};

/// Matrices are [re a11, im a11, re a12, im a12, re a21, im a21, re a22, im a22].
std::string matrices_to_json(const MatrixSet& set);
MatrixSet matrices_from_json(const std::string& text);

/// Header n,s_n,samples,r_min_rescaled,hausdorff_to_shell,flags.
std::string series_to_csv(const lab::LimitSeries& series);
std::string series_to_json(const lab::LimitSeries& series);

std::string lemma_to_json(const lab::LemmaReport& rep);
std::string lemma_to_csv(const lab::LemmaReport& rep);
std::string lemma_scan_to_json(const std::vector<lab::LemmaReport>& reps);
std::string line_check_to_json(const lab::LineCheckReport& rep, const lab::LineCheckConfig& cfg);
std::string sweep_to_json(const std::vector<lab::SweepRecord>& records, const SurfaceSpec& f,
                          const Horosphere& h0);
std::string steer_to_json(const SteerRequest& req, const SteerResult& res);
std::string hausdorff_to_json(const CappedHausdorffReport& rep);
std::string ball_to_json(const PointCloud& cloud);
std::string ball_to_csv(const PointCloud& cloud);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> config;  ///< fully resolved, defaults included
  std::optional<std::uint64_t> seed;
  std::string started;   ///< UTC, ISO 8601
  std::string finished;
  std::map<std::string, std::string> outputs;  ///< path -> sha256
};

std::string manifest_to_json(const RunManifest& m);
std::string utc_timestamp();

}  // namespace hamoeba::io
