#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hamoeba/cli.hpp"
#include "hamoeba/error.hpp"
#include "hamoeba/io.hpp"
#include "hamoeba/text.hpp"

using namespace hamoeba;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "hamoeba_io_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string cloud_text(const std::string& convention, const std::string& point) {
  return R"({"schema":"hamoeba.cloud.v1","convention":")" + convention + R"(","points":[)" + point + "]}";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("complex and range parsing") {
  CHECK(parse_complex("3") == cplx(3.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(parse_complex("1.5e3-0.5i") == cplx(1500.0, -0.5));
  CHECK(parse_complex("(1,-2)") == cplx(1.0, -2.0));
  CHECK_THROWS_AS(parse_complex("1+"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
  CHECK(parse_complex(format_complex(cplx(0.1, -1.0 / 3.0))) == cplx(0.1, -1.0 / 3.0));
  CHECK(parse_double_list("1,10,100") == std::vector<double>{1.0, 10.0, 100.0});
  const auto r = parse_range("10:40:0.5");
  CHECK(r.size() == 61);
  CHECK(r.back() == doctest::Approx(40.0));
  CHECK_THROWS_AS(parse_range("1:2:0"), Error);
  CHECK_THROWS_AS(parse_range("1:2"), Error);
}

TEST_CASE("cloud round trip") {
  PointCloud cloud;
  cloud.meta = {Kappa::gram, "trace", 100.0, 4.6, 42, 4};
  cloud.points = {HPoint::origin(), geodesic_from_origin(UnitVec2::normalized(1.0, cplx(0, 2)), 1.7),
                  geodesic_from_origin(UnitVec2::e2(), 30.0),
                  geodesic_from_origin(UnitVec2::normalized(cplx(0.3, 1), cplx(-2, 0.5)), 12.0)};
  const PointCloud back = io::cloud_from_json(io::cloud_to_json(cloud), Kappa::gram);
  CHECK(back.meta.convention == Kappa::gram);
  CHECK(back.meta.family == "trace");
  CHECK(back.meta.seed == 42);
  CHECK(back.meta.s == 4.6);
  REQUIRE(back.points.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(distance(back.points[i], cloud.points[i]) <= 1e-12);
  CHECK(std::abs(back.points[1].p11() - cloud.points[1].p11()) <= 1e-15 * cloud.points[1].p11());
}

TEST_CASE("cloud validation") {
  CHECK_THROWS_AS(io::cloud_from_json(cloud_text("polar", "[1,0,0,0.5]")), Error);
  try {
    io::cloud_from_json(cloud_text("polar", "[1,0,0,1]"), Kappa::gram);
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("convention mismatch") != std::string::npos);
  }
  CHECK_NOTHROW(io::cloud_from_json(cloud_text("polar", "[1,0,0,1]"), Kappa::polar));
  CHECK_THROWS_AS(io::cloud_from_json(R"({"schema":"other","convention":"polar","points":[]})"), Error);
  CHECK_THROWS_AS(io::cloud_from_json("{not json"), Error);
  CHECK_THROWS_AS(io::cloud_from_json(cloud_text("polar", "[1,0,1]")), Error);
}

TEST_CASE("matrices round trip exactly") {
  io::MatrixSet set;
  set.surface = "trace:3";
  set.meta["seed"] = "1";
  set.matrices = {Mat2C{cplx(0.1, 0.2), cplx(1.0 / 3.0), cplx(-2.0, 1e-300), cplx(7.0, -1e10)}};
  const io::MatrixSet back = io::matrices_from_json(io::matrices_to_json(set));
  CHECK(back.matrices == set.matrices);
  CHECK(back.surface == "trace:3");
  CHECK(back.meta.at("seed") == "1");
}

TEST_CASE("series csv layout") {
  lab::LimitSeries s;
  lab::LimitRow row;
  row.n = 10;
  row.s_n = 2.5;
  row.samples = 1000;
  row.r_min_rescaled = 0.5;
  row.hausdorff_to_shell = std::numeric_limits<double>::infinity();
  row.flags = "empty-in-cap";
  s.rows.push_back(row);
  const std::string csv = io::series_to_csv(s);
  CHECK(csv.rfind("n,s_n,samples,r_min_rescaled,hausdorff_to_shell,flags\n", 0) == 0);
  CHECK(csv.find("10,2.5,1000,0.5,inf,empty-in-cap") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("help, version and usage errors") {
  CHECK(cli({"--help"}).code == 0);
  const Run v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(kVersion) != std::string::npos);
  CHECK(cli({}).code == 1);
  CHECK(cli({"sample", "--bogus"}).code == 1);
  CHECK(cli({"tropical-limit", "--n", "10"}).code == 1);  // missing --seed
  CHECK(cli({"steer", "--c", "1", "--lambda", "1.5"}).code == 1);
  CHECK(cli({"sample", "--surface", "trace:3", "--method", "sideways"}).code == 1);
}

TEST_CASE("numerical failures exit with 2") {
  const Run r = cli({"sample", "--surface", "trace:3", "--log-min", "-300", "--log-max", "300", "--seed", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("non-finite") != std::string::npos);
}

TEST_CASE("sample, project and measure") {
  const fs::path dir = scratch_dir();
  const std::string mats = (dir / "mats.json").string();
  const std::string cloud = (dir / "cloud.json").string();
  REQUIRE(cli({"sample", "--surface", "trace:3", "--samples", "300", "--seed", "4", "--out", mats}).code == 0);
  CHECK(fs::exists(mats + ".manifest.json"));
  const json manifest = json::parse(io::read_file(mats + ".manifest.json"));
  CHECK(manifest["schema"] == io::kManifestSchema);
  CHECK(manifest["seed"] == 4);
  CHECK(manifest["config"]["samples"] == "300");
  CHECK(manifest["config"]["log-min"] == "-3");
  REQUIRE(manifest["outputs"].size() == 1);
  CHECK(manifest["outputs"][0]["path"] == mats);
  CHECK(manifest["outputs"][0]["sha256"] == io::sha256_hex(io::read_file(mats)));

  REQUIRE(cli({"amoeba", "--in", mats, "--kappa", "gram", "--out", cloud}).code == 0);
  const PointCloud pc = io::cloud_from_json(io::read_file(cloud), Kappa::gram);
  CHECK(pc.points.size() == 300);

  const Run h = cli({"hausdorff", "--x", cloud, "--y", cloud, "--kappa", "gram"});
  REQUIRE(h.code == 0);
  CHECK(json::parse(h.out)["value"] == 0.0);
  const Run mismatch = cli({"hausdorff", "--x", cloud, "--y", cloud, "--kappa", "polar"});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.err.find("convention mismatch") != std::string::npos);

  const Run csv = cli({"export-ball", "--in", cloud, "--kappa", "gram"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("visual chart") != std::string::npos);

  const Run again = cli({"sample", "--surface", "trace:3", "--samples", "300", "--seed", "4"});
  CHECK(again.out == io::read_file(mats));
}

TEST_CASE("config files fill in missing flags") {
  const fs::path dir = scratch_dir();
  const std::string cfg = (dir / "steer.cfg").string();
  {
    std::ofstream out(cfg);
    out << "# steering setup\nc = 1e4\nlambda = 1.5\nmode = kernel\n";
  }
  const auto merged = merge_config_file({"steer", "--lambda", "2", "--config", cfg}, cfg);
  CHECK(std::count(merged.begin(), merged.end(), "--lambda") == 1);
  CHECK(std::find(merged.begin(), merged.end(), "1e4") != merged.end());

  const Run r = cli({"steer", "--config", cfg, "--lambda", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["lambda"] == 2.0);
  CHECK(doc["mode"] == "kernel");

  {
    std::ofstream out(cfg);
    out << "no equals sign here\n";
  }
  CHECK(cli({"steer", "--config", cfg}).code == 1);
}

TEST_CASE("tropical-limit command output") {
  const Run r = cli({"tropical-limit", "--n", "100,1000", "--samples", "2000", "--seed", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,s_n,samples,r_min_rescaled,hausdorff_to_shell,flags");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 2);
  CHECK(cli({"tropical-limit", "--n", "1000,100", "--seed", "3"}).code == 1);
}

TEST_CASE("other subcommands run") {
  CHECK(cli({"lemma-check", "--s", "5:10:1", "--samples", "64", "--seed", "1"}).code == 0);
  CHECK(cli({"lemma-check", "--s", "5:10:1", "--samples", "64", "--scan-eps", "0.1:0.5:0.2", "--scan-rho",
             "1:1.5:0.5", "--seed", "1"})
            .code == 0);
  CHECK(cli({"line-amoeba", "--lines", "3", "--taus", "20", "--seed", "1"}).code == 0);
  CHECK(cli({"sweep", "--surface", "trace:3", "--t", "1:2:0.5", "--seed", "1"}).code == 0);
  CHECK(cli({"steer", "--c", "100", "--lambda", "1.5", "--l1", "1", "--l2", "2+i"}).code == 0);
  CHECK(cli({"sample", "--surface", "trace:3", "--method", "lines", "--samples", "20", "--seed", "1"}).code == 0);
}

}  // TEST_SUITE
