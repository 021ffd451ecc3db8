#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hamoeba/amoeba.hpp"
#include "hamoeba/cli.hpp"
#include "hamoeba/error.hpp"
#include "hamoeba/hdist.hpp"
#include "hamoeba/lab.hpp"
#include "hamoeba/parallel.hpp"
#include "hamoeba/varieties.hpp"

namespace py = pybind11;
using namespace hamoeba;

namespace {

using Rows = std::vector<std::vector<cplx>>;

Mat2C to_mat(const Rows& m) {
  require(m.size() == 2 && m[0].size() == 2 && m[1].size() == 2, "expected a 2x2 matrix");
  return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

Rows from_mat(const Mat2C& a) { return {{a.a11, a.a12}, {a.a21, a.a22}}; }

UnitVec2 to_unit(const std::pair<cplx, cplx>& v) { return UnitVec2::normalized(v.first, v.second); }

py::dict row_dict(const lab::LimitRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["s_n"] = r.s_n;
  d["level"] = r.level;
  d["samples"] = r.samples;
  d["in_cap"] = r.in_cap;
  d["r_min_rescaled"] = r.r_min_rescaled;
  d["r_pred"] = r.r_pred;
  d["hausdorff_to_shell"] = r.hausdorff_to_shell;
  d["oracle_violations"] = r.oracle_violations;
  d["profile_spread"] = r.profile_spread;
  d["flags"] = r.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hyperbolic amoebas of surfaces in SL2(C)";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "HamoebaError", PyExc_ValueError);

  py::class_<HPoint>(m, "HPoint")
      .def(py::init<>())
      .def_static("from_entries", &HPoint::from_entries, py::arg("p11"), py::arg("p22"), py::arg("p12"),
                  py::arg("tol") = 1e-9)
      .def_property_readonly("p11", &HPoint::p11)
      .def_property_readonly("p22", &HPoint::p22)
      .def_property_readonly("p12", &HPoint::p12)
      .def("matrix", [](const HPoint& p) { return from_mat(p.matrix()); })
      .def("__repr__", [](const HPoint& p) {
        std::ostringstream s;
        s << "HPoint(p11=" << p.p11() << ", p22=" << p.p22() << ", p12=" << p.p12() << ")";
        return s.str();
      });

  m.def("distance", &distance, py::arg("p"), py::arg("q"));
  m.def("distance_from_origin", &distance_from_origin);
  m.def(
      "geodesic_from_origin", [](const std::pair<cplx, cplx>& u, double t) { return geodesic_from_origin(to_unit(u), t); },
      py::arg("u"), py::arg("t"));
  m.def("rescale", &rescale, py::arg("p"), py::arg("s"));
  m.def(
      "busemann", [](const std::pair<cplx, cplx>& w, const HPoint& p) { return busemann(to_unit(w), p); },
      py::arg("w"), py::arg("p"));
  m.def(
      "kappa", [](const Rows& a, const std::string& conv) { return kappa(to_mat(a), parse_kappa(conv)); },
      py::arg("a"), py::arg("convention") = "polar");

  m.def(
      "sample_trace_surface",
      [](cplx c, std::size_t k, std::uint64_t seed, double log_min, double log_max) {
        std::vector<Rows> out;
        for (const Mat2C& a : sample_trace_surface(c, {log_min, log_max}, k, seed)) out.push_back(from_mat(a));
        return out;
      },
      py::arg("c"), py::arg("k"), py::arg("seed"), py::arg("log_min") = -3.0, py::arg("log_max") = 3.0);
  m.def("trace_oracle_rmin", &trace_oracle_rmin, py::arg("c"));
  m.def(
      "poly_roots", [](const std::vector<cplx>& coeffs) { return poly_roots(coeffs); }, py::arg("coeffs"),
      "Roots of sum coeffs[j] z^j.");

  m.def(
      "hausdorff_capped",
      [](const std::vector<HPoint>& x, const std::vector<HPoint>& y, double cap) {
        const CappedHausdorffReport r = hausdorff_capped(x, y, cap);
        py::dict d;
        d["value"] = r.value;
        d["directed_xy"] = r.directed_xy;
        d["directed_yx"] = r.directed_yx;
        d["count_x"] = r.count_x;
        d["count_y"] = r.count_y;
        d["flag"] = r.flag;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("cap"));

  m.def(
      "tropical_limit",
      [](const std::string& family, const std::vector<double>& n, std::size_t samples, std::uint64_t seed, double r,
         cplx c, const std::string& scaling, double cap, const std::string& conv, const std::string& reference) {
        lab::LimitConfig cfg;
        cfg.family = lab::Family::parse(family, r, c);
        cfg.scaling = lab::Scaling::parse(scaling);
        cfg.n_list = n;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.cap = cap;
        cfg.kappa = parse_kappa(conv);
        require(reference == "shell" || reference == "ball", "reference must be 'shell' or 'ball'");
        cfg.reference = reference == "shell" ? lab::Reference::shell : lab::Reference::cap_ball;
        py::list rows;
        for (const lab::LimitRow& row : lab::tropical_limit_run(cfg).rows) rows.append(row_dict(row));
        return rows;
      },
      py::arg("family"), py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("r") = 1.0,
      py::arg("c") = cplx(3.0), py::arg("scaling") = "log", py::arg("cap") = 3.0, py::arg("convention") = "polar",
      py::arg("reference") = "shell");

  m.def(
      "lemma_check",
      [](double d, double eps, double rho, const std::vector<double>& s_grid, std::size_t k, std::uint64_t seed) {
        const lab::LemmaReport rep = lab::lemma_check({d, eps, rho}, s_grid, k, seed);
        py::dict out;
        out["mu"] = rep.mu;
        out["reference"] = rep.reference;
        out["slope"] = rep.slope;
        out["expected_slope"] = rep.expected_slope;
        out["max_reference_error"] = rep.max_reference_error;
        out["sigma_hat"] = rep.sigma_hat ? py::object(py::float_(*rep.sigma_hat)) : py::object(py::none());
        out["hypothesis_holds"] = rep.hypothesis_holds;
        return out;
      },
      py::arg("d"), py::arg("eps"), py::arg("rho"), py::arg("s_grid"), py::arg("k") = 2000, py::arg("seed") = 0);

  m.def(
      "steer",
      [](cplx c, double lambda, const std::pair<cplx, cplx>& line, const std::string& mode) {
        require(mode == "image" || mode == "kernel", "mode must be 'image' or 'kernel'");
        const SteerResult r =
            steer({c, to_unit(line), lambda, mode == "image" ? SteerMode::image : SteerMode::kernel});
        py::dict d;
        d["b"] = from_mat(r.b);
        d["trace_residual"] = r.trace_residual;
        d["det_residual"] = r.det_residual;
        d["log_norm"] = r.log_norm;
        d["target_log_norm"] = r.target_log_norm;
        d["gap"] = r.gap;
        return d;
      },
      py::arg("c"), py::arg("lam"), py::arg("line"), py::arg("mode") = "image");

  m.def("set_worker_count", &set_worker_count, py::arg("workers"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
