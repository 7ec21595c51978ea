#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxpp/coxmodels.hpp"
#include "coxpp/harness.hpp"
#include "coxpp/parallel.hpp"

namespace py = pybind11;
using namespace coxpp;

namespace {

py::array_t<double> to_array(const PlanarConfig& cfg) {
  py::array_t<double> out({static_cast<py::ssize_t>(cfg.size()), py::ssize_t{2}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    m(i, 0) = cfg[i].x;
    m(i, 1) = cfg[i].y;
  }
  return out;
}

py::array_t<double> to_array(const SphereConfig& cfg) {
  py::array_t<double> out({static_cast<py::ssize_t>(cfg.size()), py::ssize_t{3}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    m(i, 0) = cfg[i].x;
    m(i, 1) = cfg[i].y;
    m(i, 2) = cfg[i].z;
  }
  return out;
}

py::dict row_dict(const ExperimentRow& r) {
  py::dict d;
  d["parameter"] = r.parameter;
  d["distance"] = r.distance.value;
  d["distance_se"] = r.distance.se;
  d["distance_functional"] = r.distance.functional;
  d["count_tv"] = r.count_tv.value;
  d["count_tv_se"] = r.count_tv.se;
  d["bound"] = r.bound.bound_value;
  d["effective_intensity"] = r.effective_intensity.mean;
  d["effective_intensity_se"] = r.effective_intensity.se;
  d["target_intensity"] = r.target_intensity;
  d["convention"] = r.convention;
  d["coupled"] = r.coupled;
  d["within_bound"] = r.within_bound;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cox point process simulation and Stein bound verification";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

  py::class_<Window>(m, "Window")
      .def_static("disk", [](double cx, double cy, double r) { return Window::disk({cx, cy}, r); },
                  py::arg("cx"), py::arg("cy"), py::arg("radius"))
      .def_static("rect", &Window::rect, py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"))
      .def_static("parse", &Window::parse)
      .def_property_readonly("area", &Window::area)
      .def("contains", [](const Window& w, double x, double y) { return w.contains({x, y}); })
      .def("__repr__", [](const Window& w) { return "Window('" + w.describe() + "')"; })
      .def("__str__", &Window::describe);

  m.def("chord_length",
        [](const Window& K, double r, double theta) { return chord_length(K, make_line(r, theta)); },
        py::arg("window"), py::arg("r"), py::arg("theta"));
  m.def("support_radius", &support_radius);

  m.def("chord_square_integral",
        [](const Window& K) {
          const auto q = chord_square_integral(K);
          return py::make_tuple(q.value, q.error);
        },
        "Returns (value, error estimate) of the squared chord integral over lines / pi.");
  m.def("cox_bound",
        [](double c, double lambda_n, const Window& K) {
          return cox_bound(ModelParams::planar(c, lambda_n), K).bound_value;
        },
        py::arg("c"), py::arg("lambda_n"), py::arg("window"));
  m.def("satellite_bound",
        [](double c, std::size_t n) { return satellite_bound(ModelParams::spherical(c, n)).bound_value; },
        py::arg("c"), py::arg("n"));
  m.def("coarea_ratio",
        [](const Window& A, double theta) { return coarea_check(Integrand::constant(), A, theta).ratio; },
        py::arg("window"), py::arg("theta") = 0.0);

  m.def("sample_ppp",
        [](const Window& K, double lambda, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return to_array(sample_ppp_window(K, lambda, rng));
        },
        py::arg("window"), py::arg("intensity"), py::arg("seed"), py::arg("stream") = 0);
  m.def("sample_cox_line",
        [](double c, double lambda_n, const Window& K, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return to_array(sample_cox_line(ModelParams::planar(c, lambda_n), K, rng).points);
        },
        py::arg("c"), py::arg("lambda_n"), py::arg("window"), py::arg("seed"), py::arg("stream") = 0);
  m.def("sample_satellites",
        [](double c, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return to_array(sample_satellites(ModelParams::spherical(c, n), rng).points);
        },
        py::arg("c"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def("effective_intensity",
        [](const std::string& model, double c, double parameter, const Window& K, std::size_t reps,
           std::uint64_t seed) {
          const auto kind = parse_model_kind(model);
          const auto p = kind == ModelKind::CoxLine
                             ? ModelParams::planar(c, parameter)
                             : ModelParams::spherical(c, static_cast<std::size_t>(parameter));
          py::gil_scoped_release release;
          const auto e = effective_intensity(kind, p, K, reps, StreamKey(seed));
          return std::pair{e.mean, e.se};
        },
        py::arg("model"), py::arg("c"), py::arg("parameter"), py::arg("window"),
        py::arg("reps") = 2000, py::arg("seed") = 1);

  m.def("rate_regression",
        [](const std::vector<double>& params, const std::vector<double>& distances) {
          if (params.size() != distances.size()) throw py::value_error("length mismatch");
          std::vector<std::pair<double, double>> pts;
          for (std::size_t i = 0; i < params.size(); ++i) pts.emplace_back(params[i], distances[i]);
          const auto f = rate_regression(pts);
          py::dict d;
          d["slope"] = f.slope;
          d["intercept"] = f.intercept;
          d["r_squared"] = f.r_squared;
          return d;
        });

  m.def("run_experiment",
        [](const std::string& model, std::optional<std::vector<double>> sweep,
           std::optional<std::size_t> reps, std::optional<double> c,
           std::optional<std::uint64_t> seed, const std::string& target,
           std::optional<Window> window) {
          auto cfg = default_config(parse_model_kind(model));
          if (sweep) cfg.sweep = *sweep;
          if (reps) cfg.reps = *reps;
          if (c) cfg.c = *c;
          if (seed) cfg.seed = *seed;
          if (window) cfg.window = *window;
          cfg.target = parse_target_convention(target);
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(cfg);
          }
          py::dict out;
          py::list rows;
          for (const auto& row : r.rows) rows.append(row_dict(row));
          out["rows"] = rows;
          if (r.fit) {
            out["slope"] = r.fit->slope;
            out["r_squared"] = r.fit->r_squared;
          } else {
            out["slope"] = py::none();
            out["r_squared"] = py::none();
          }
          return out;
        },
        py::arg("model"), py::arg("sweep") = py::none(), py::arg("reps") = py::none(),
        py::arg("c") = py::none(), py::arg("seed") = py::none(), py::arg("target") = "auto",
        py::arg("window") = py::none());

  m.def("run_checks",
        [](const std::string& group, std::uint64_t seed, std::optional<std::size_t> reps) {
          const auto g = parse_check_group(group);
          std::vector<ValidationRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_validation_suite(g, {seed, reps});
          }
          py::list out;
          for (const auto& r : rows) {
            py::dict d;
            d["check_name"] = r.check;
            d["relation"] = r.relation;
            d["lhs"] = r.lhs;
            d["rhs"] = r.rhs;
            d["stderr"] = r.se;
            d["tolerance"] = r.tolerance;
            d["pass"] = r.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("group") = "all", py::arg("seed") = SuiteOptions{}.seed, py::arg("reps") = py::none());

  m.def("set_thread_count", &set_thread_count);
}
