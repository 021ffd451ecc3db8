#include "hamoeba/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include "hamoeba/error.hpp"
#include "hamoeba/io.hpp"
#include "hamoeba/lab.hpp"
#include "hamoeba/parallel.hpp"
#include "hamoeba/text.hpp"

namespace hamoeba {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const std::string& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

struct Common {
  std::string kappa = "polar";
  double cap = 3.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  unsigned threads = 0;
  std::string config;
};

CLI::Option* add_seed(CLI::App* sub, Common& c, bool required) {
  auto* opt = sub->add_option("--seed", c.seed, "64-bit seed for all sampling");
  if (required) opt->required();
  return opt;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "output file (default: stdout); a manifest is written next to it");
  sub->add_option("--threads", c.threads, "worker threads (0 = hardware concurrency)")->capture_default_str();
  sub->add_option("--config", c.config, "file of 'key = value' lines; command-line flags override");
}

void add_kappa(CLI::App* sub, Common& c) {
  sub->add_option("--kappa", c.kappa, "quotient normalization")->capture_default_str()->check(
      CLI::IsMember({"polar", "gram"}));
}

// The first allowed format is the default. Subcommands share one variable,
// so the default is applied after parsing.
void add_format(CLI::App* sub, Common& c, std::vector<std::string> allowed) {
  sub->add_option("--format", c.format, "output format: " + allowed.front() + " (default) or " + allowed.back())
      ->check(CLI::IsMember(allowed));
}

std::map<std::string, std::string> resolved_config(const CLI::App* sub) {
  std::map<std::string, std::string> cfg;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt == sub->get_help_ptr() || opt == sub->get_help_all_ptr()) continue;
    std::string name = opt->get_name(false, true);
    if (name.empty()) continue;
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    if (opt->count() > 0) {
      std::string joined;
      for (const std::string& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      cfg[name] = opt->get_type_size() == 0 && joined.empty() ? "true" : joined;
    } else {
      cfg[name] = opt->get_type_size() == 0 ? "false" : opt->get_default_str();
    }
  }
  return cfg;
}

class Emitter {
 public:
  Emitter(const CLI::App* sub, const Common& c, const std::vector<std::string>& args, bool seeded, std::ostream& out)
      : out_(out), path_(c.out) {
    manifest_.tool_version = kVersion;
    manifest_.command = sub->get_name();
    manifest_.argv = args;
    manifest_.config = resolved_config(sub);
    if (manifest_.config.contains("format")) manifest_.config["format"] = c.format;
    if (seeded) manifest_.seed = c.seed;
    manifest_.started = io::utc_timestamp();
  }

  void emit(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    io::write_file(path_, text);
    manifest_.outputs[path_] = io::sha256_hex(text);
    manifest_.finished = io::utc_timestamp();
    io::write_file(path_ + ".manifest.json", io::manifest_to_json(manifest_));
  }

 private:
  std::ostream& out_;
  std::string path_;
  io::RunManifest manifest_;
};

UnitVec2 unit_from(const std::string& a, const std::string& b) {
  return UnitVec2::normalized(parse_complex(a), parse_complex(b));
}

}  // namespace

std::vector<std::string> merge_config_file(const std::vector<std::string>& args, const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    require(!key.empty(), path + ":" + std::to_string(line_no) + ": empty key");
    if (key == "config" || has_flag(args, key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  std::vector<std::string> merged = args;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return merged;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic amoebas of surfaces in SL2(C): sampling, tropical limits and checks.", "hamoeba"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Common c;

  // sample
  std::string surface;
  std::size_t sample_count = 1000;
  std::size_t limit_samples = 20000;
  std::size_t lemma_samples = 2000;
  double log_min = -3.0;
  double log_max = 3.0;
  std::string method = "auto";
  std::size_t retry_budget = 0;
  auto* sample = app.add_subcommand("sample", "sample matrices on a surface");
  sample->add_option("--surface", surface, "trace:<complex> or poly:<coefficient table>")->required();
  sample->add_option("--samples", sample_count, "number of matrices")->capture_default_str();
  sample->add_option("--log-min", log_min, "lower end of the log-modulus window")->capture_default_str();
  sample->add_option("--log-max", log_max, "upper end of the log-modulus window")->capture_default_str();
  sample->add_option("--method", method, "direct (trace only), lines, or auto")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "direct", "lines"}));
  sample->add_option("--retry-budget", retry_budget, "maximum random lines (0 = 50 k + 100)")->capture_default_str();
  add_seed(sample, c, true);
  add_common(sample, c);

  // amoeba
  std::string in_path;
  double rescale_by = 1.0;
  auto* amoeba = app.add_subcommand("amoeba", "project matrices to a point cloud in H^3");
  amoeba->add_option("--in", in_path, "matrices JSON")->required();
  amoeba->add_option("--rescale", rescale_by, "rescale the cloud by this factor")->capture_default_str();
  add_kappa(amoeba, c);
  add_common(amoeba, c);
  add_format(amoeba, c, {"json", "csv"});

  // tropical-limit
  std::string family = "trace";
  double r_param = 1.0;
  std::string c_text = "3";
  std::string scaling = "log";
  std::string n_text;
  std::size_t ref_samples = 0;
  std::string reference = "shell";
  bool no_conjugate = false;
  auto* limit = app.add_subcommand("tropical-limit", "rescaled amoebas of a trace family against the predicted limit");
  limit->add_option("--family", family, "trace (c_n = n^r), exp (c_n = e^n) or const (c_n = c)")
      ->capture_default_str()
      ->check(CLI::IsMember({"trace", "power", "exp", "const", "constant"}));
  limit->add_option("--r", r_param, "exponent of the trace family")->capture_default_str();
  limit->add_option("--c", c_text, "level of the constant family")->capture_default_str();
  limit->add_option("--scaling", scaling, "log or pow:<e>")->capture_default_str();
  limit->add_option("--n", n_text, "comma-separated increasing n values")->required();
  limit->add_option("--samples", limit_samples, "samples per n")->capture_default_str();
  limit->add_option("--reference-samples", ref_samples, "reference points (0 = same as samples)")->capture_default_str();
  limit->add_option("--reference", reference, "shell (predicted limit) or ball (whole cap)")
      ->capture_default_str()
      ->check(CLI::IsMember({"shell", "ball"}));
  limit->add_flag("--no-conjugate", no_conjugate, "skip the Haar conjugation of samples");
  limit->add_option("--cap", c.cap, "cap radius")->capture_default_str();
  add_kappa(limit, c);
  add_seed(limit, c, true);
  add_common(limit, c);
  add_format(limit, c, {"csv", "json"});

  // lemma-check
  double d = 1.0;
  double eps = 0.5;
  double rho = 1.2;
  std::string s_text = "10:40:0.5";
  std::string scan_eps;
  std::string scan_rho;
  auto* lemma = app.add_subcommand("lemma-check", "horocycle separation of two balls under rescaling (H^2 slice)");
  lemma->add_option("--d", d, "distance of the small ball's center from O")->capture_default_str();
  lemma->add_option("--eps", eps, "radius of the small ball")->capture_default_str();
  lemma->add_option("--rho", rho, "radius of the ball about O")->capture_default_str();
  lemma->add_option("--s", s_text, "s grid start:stop:step")->capture_default_str();
  lemma->add_option("--samples", lemma_samples, "boundary angles per s")->capture_default_str();
  lemma->add_option("--scan-eps", scan_eps, "scan epsilon over start:stop:step (with --scan-rho)");
  lemma->add_option("--scan-rho", scan_rho, "scan rho over start:stop:step (with --scan-eps)");
  add_seed(lemma, c, true);
  add_common(lemma, c);
  add_format(lemma, c, {"json", "csv"});

  // line-amoeba
  std::size_t lines = 100;
  std::size_t taus = 1000;
  double tau_max = 10.0;
  double base_log_norm = 2.0;
  auto* line_cmd = app.add_subcommand("line-amoeba", "check that gram amoebas of lines are horospheres");
  line_cmd->add_option("--lines", lines, "random lines")->capture_default_str();
  line_cmd->add_option("--taus", taus, "parameters per line")->capture_default_str();
  line_cmd->add_option("--tau-max", tau_max, "parameter disc radius")->capture_default_str();
  line_cmd->add_option("--base-log-norm", base_log_norm, "log-norm range of base points")->capture_default_str();
  add_seed(line_cmd, c, true);
  add_common(line_cmd, c);

  // sweep
  std::string w1 = "0";
  std::string w2 = "1";
  double level = 1.0;
  std::string t_text = "1:5:0.5";
  double norm_bound = 1e8;
  std::string phase = "haar";
  auto* sweep = app.add_subcommand("sweep", "intersect a surface with lifts of contracting horospheres");
  sweep->add_option("--surface", surface, "trace:<complex> or poly:<coefficient table>")->required();
  sweep->add_option("--w1", w1, "first entry of the horosphere covector")->capture_default_str();
  sweep->add_option("--w2", w2, "second entry of the horosphere covector")->capture_default_str();
  sweep->add_option("--level", level, "level of the starting horosphere")->capture_default_str();
  sweep->add_option("--t", t_text, "t grid start:stop:step")->capture_default_str();
  sweep->add_option("--norm-bound", norm_bound, "roots above this norm are flagged as escaped")->capture_default_str();
  sweep->add_option("--phase", phase, "haar (seeded SU(2) phase of the lift) or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"haar", "none"}));
  add_seed(sweep, c, true);
  add_common(sweep, c);

  // steer
  std::string steer_c;
  double lambda = 1.0;
  std::string l1 = "1";
  std::string l2 = "0";
  std::string mode = "image";
  auto* steer_cmd = app.add_subcommand("steer", "trace-level solution with prescribed norm growth and image/kernel");
  steer_cmd->add_option("--c", steer_c, "trace level, |c| > 2")->required();
  steer_cmd->add_option("--lambda", lambda, "log-norm ratio, >= 1")->capture_default_str();
  steer_cmd->add_option("--l1", l1, "first entry of the line L")->capture_default_str();
  steer_cmd->add_option("--l2", l2, "second entry of the line L")->capture_default_str();
  steer_cmd->add_option("--mode", mode, "image or kernel")->capture_default_str()->check(CLI::IsMember({"image", "kernel"}));
  add_common(steer_cmd, c);

  // hausdorff
  std::string x_path;
  std::string y_path;
  auto* haus = app.add_subcommand("hausdorff", "capped Hausdorff distance between two clouds");
  haus->add_option("--x", x_path, "first cloud JSON")->required();
  haus->add_option("--y", y_path, "second cloud JSON")->required();
  haus->add_option("--cap", c.cap, "cap radius")->capture_default_str();
  add_kappa(haus, c);
  add_common(haus, c);

  // export-ball
  auto* ball = app.add_subcommand("export-ball", "Poincare ball coordinates for plotting");
  ball->add_option("--in", in_path, "cloud JSON")->required();
  add_kappa(ball, c);
  add_common(ball, c);
  add_format(ball, c, {"csv", "json"});

  // Config files are merged before parsing so that validation sees them.
  std::vector<std::string> args = raw_args;
  for (std::size_t i = 0; i + 1 < raw_args.size(); ++i) {
    if (raw_args[i] == "--config") {
      try {
        args = merge_config_file(raw_args, raw_args[i + 1]);
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  std::vector<std::string> argv_store{"hamoeba"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << sub->help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (c.format.empty()) c.format = (sub == limit || sub == ball) ? "csv" : "json";
  try {
    set_worker_count(c.threads);
    const bool seeded = sub->get_option_no_throw("--seed") != nullptr;
    Emitter emitter(sub, c, raw_args, seeded, out);

    if (sub == sample) {
      const SurfaceSpec f = SurfaceSpec::parse(surface);
      const LogWindow window{log_min, log_max};
      io::MatrixSet set;
      set.surface = f.descriptor();
      set.meta["seed"] = std::to_string(c.seed);
      set.meta["log_window"] = format_complex(log_min) + ":" + format_complex(log_max);
      const bool direct = method == "direct" || (method == "auto" && f.family() == "trace");
      if (direct) {
        require(f.family() == "trace", "the direct sampler only handles trace surfaces");
        set.matrices = sample_trace_surface(parse_complex(f.parameter()), window, sample_count, c.seed);
        set.meta["method"] = "direct";
      } else {
        SurfaceSample s = sample_surface_via_lines(f, sample_count, window, c.seed, retry_budget);
        set.matrices = std::move(s.points);
        set.meta["method"] = "lines";
        set.meta["lines_tried"] = std::to_string(s.lines_tried);
        set.meta["roots_rejected"] = std::to_string(s.roots_rejected);
        if (!s.note.empty()) {
          set.meta["note"] = s.note;
          err << "warning: " << s.note << "\n";
        }
      }
      emitter.emit(io::matrices_to_json(set));
    } else if (sub == amoeba) {
      const io::MatrixSet set = io::matrices_from_json(io::read_file(in_path));
      CloudMeta meta;
      meta.family = set.surface;
      PointCloud cloud = project_cloud(set.matrices, parse_kappa(c.kappa), meta);
      if (rescale_by != 1.0) cloud = rescale_cloud(cloud, rescale_by);
      if (c.format == "csv") {
        std::string text = "p11,re_p12,im_p12,p22\n";
        for (const HPoint& p : cloud.points) {
          text += format_complex(p.p11()) + "," + format_complex(p.p12().real()) + "," +
                  format_complex(p.p12().imag()) + "," + format_complex(p.p22()) + "\n";
        }
        emitter.emit(text);
      } else {
        emitter.emit(io::cloud_to_json(cloud));
      }
    } else if (sub == limit) {
      lab::LimitConfig cfg;
      cfg.family = lab::Family::parse(family, r_param, parse_complex(c_text));
      cfg.scaling = lab::Scaling::parse(scaling);
      cfg.n_list = parse_double_list(n_text);
      cfg.cap = c.cap;
      cfg.samples = limit_samples;
      cfg.reference_samples = ref_samples;
      cfg.kappa = parse_kappa(c.kappa);
      cfg.reference = reference == "shell" ? lab::Reference::shell : lab::Reference::cap_ball;
      cfg.conjugate = !no_conjugate;
      cfg.seed = c.seed;
      const lab::LimitSeries series = lab::tropical_limit_run(cfg);
      emitter.emit(c.format == "json" ? io::series_to_json(series) : io::series_to_csv(series));
    } else if (sub == lemma) {
      const std::vector<double> grid = parse_range(s_text);
      if (!scan_eps.empty() || !scan_rho.empty()) {
        require(!scan_eps.empty() && !scan_rho.empty(), "--scan-eps and --scan-rho go together");
        std::vector<LemmaConfig> cfgs;
        for (double e : parse_range(scan_eps)) {
          for (double r : parse_range(scan_rho)) cfgs.push_back({d, e, r});
        }
        emitter.emit(io::lemma_scan_to_json(lab::lemma_scan(cfgs, grid, lemma_samples, c.seed)));
      } else {
        const lab::LemmaReport rep = lab::lemma_check({d, eps, rho}, grid, lemma_samples, c.seed);
        emitter.emit(c.format == "csv" ? io::lemma_to_csv(rep) : io::lemma_to_json(rep));
      }
    } else if (sub == line_cmd) {
      const lab::LineCheckConfig cfg{lines, taus, tau_max, base_log_norm, c.seed};
      emitter.emit(io::line_check_to_json(lab::verify_line_horosphere(cfg), cfg));
    } else if (sub == sweep) {
      const SurfaceSpec f = SurfaceSpec::parse(surface);
      const Horosphere h0{unit_from(w1, w2), level};
      Mat2C ph = Mat2C::identity();
      if (phase == "haar") {
        Stream stream(derive_seed(c.seed, "sweep-phase"), 0);
        ph = haar_su2(stream);
      }
      const std::vector<double> grid = parse_range(t_text);
      emitter.emit(io::sweep_to_json(lab::horosphere_sweep(f, h0, grid, norm_bound, ph), f, h0));
    } else if (sub == steer_cmd) {
      const SteerRequest req{parse_complex(steer_c), unit_from(l1, l2), lambda,
                             mode == "image" ? SteerMode::image : SteerMode::kernel};
      emitter.emit(io::steer_to_json(req, steer(req)));
    } else if (sub == haus) {
      const Kappa conv = parse_kappa(c.kappa);
      const PointCloud x = io::cloud_from_json(io::read_file(x_path), conv);
      const PointCloud y = io::cloud_from_json(io::read_file(y_path), conv);
      emitter.emit(io::hausdorff_to_json(hausdorff_capped(x, y, c.cap)));
    } else if (sub == ball) {
      const PointCloud cloud = io::cloud_from_json(io::read_file(in_path), parse_kappa(c.kappa));
      emitter.emit(c.format == "json" ? io::ball_to_json(cloud) : io::ball_to_csv(cloud));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::numerical ? 2 : 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  }
  return 0;
}

}  // namespace hamoeba
