#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ramploads/cli.hpp"
#include "ramploads/commands.hpp"
#include "ramploads/errors.hpp"
#include "ramploads/loads.hpp"
#include "ramploads/solvers.hpp"
#include "ramploads/verify.hpp"

namespace py = pybind11;
using namespace ramploads;

namespace {

FrictionSpec model_from(const std::string& descriptor) {
  const ModelChoice m = parse_model(descriptor);
  if (std::holds_alternative<Frozen>(m)) {
    throw Error(ErrorCode::InvalidParameter, "frozen has no speed field; use frozen_limit_loads");
  }
  return std::get<FrictionSpec>(m);
}

py::dict station_dict(const SurfaceStation& st) {
  py::dict d;
  d["x"] = st.x;
  d["s"] = st.s;
  d["w"] = st.w;
  d["u"] = st.u;
  d["v"] = st.v;
  d["w_rho"] = st.w_rho;
  d["wf1"] = st.wf1;
  d["wf2"] = st.wf2;
  d["N"] = st.N;
  d["f"] = st.f;
  d["drag_cum"] = st.drag_cum;
  d["lift_cum"] = st.lift_cum;
  return d;
}

py::dict profile_dict(const SurfaceProfile& p) {
  py::list rows;
  for (const auto& st : p.stations) rows.append(station_dict(st));
  py::dict d;
  d["stations"] = rows;
  d["s_valid"] = p.s_valid;
  d["truncated"] = p.truncated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ramploads, m) {
  m.doc() = "Surface loads on ramps in the hypersonic limit";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<RampProfile>(m, "RampProfile")
      .def_static("polynomial", &RampProfile::polynomial, py::arg("coeffs"), py::arg("x_max"))
      .def_static("straight", &RampProfile::straight, py::arg("theta"), py::arg("x_max"))
      .def_static("power", &RampProfile::power, py::arg("c"), py::arg("q"), py::arg("x_max"))
      .def_static("tabulated",
                  py::overload_cast<std::vector<double>, std::vector<double>>(&RampProfile::tabulated),
                  py::arg("xs"), py::arg("bs"))
      .def_static("from_csv", &RampProfile::from_csv)
      .def_static("parse", &parse_profile, py::arg("descriptor"), py::arg("x_max") = 1.0)
      .def("value", &RampProfile::value)
      .def("slope", &RampProfile::slope)
      .def("second_derivative", &RampProfile::second_derivative)
      .def_property_readonly("x_max", &RampProfile::x_max);

  m.def("validate_profile", [](const RampProfile& p) {
    py::list out;
    for (const auto& f : validate_profile(p)) {
      const char* sev = f.severity == Severity::Fatal ? "fatal" : f.severity == Severity::Warning ? "warning" : "info";
      out.append(py::make_tuple(sev, f.code, f.message));
    }
    return out;
  });

  py::class_<ArcChart>(m, "ArcChart")
      .def("s_of_x", &ArcChart::s_of_x)
      .def("psi_of_s", &ArcChart::psi_of_s)
      .def("b_of_s", &ArcChart::b_of_s)
      .def("curvature", [](const ArcChart& c, double s) { return frame_at(c, s).curvature; })
      .def("tangent", [](const ArcChart& c, double s) {
        const Frame f = frame_at(c, s);
        return py::make_tuple(f.tangent.x, f.tangent.y);
      })
      .def_property_readonly("s_max", &ArcChart::s_max)
      .def_property_readonly("x_max", &ArcChart::x_max);

  m.def("build_chart", [](const RampProfile& p, double tol) { return build_chart(p, tol); }, py::arg("profile"),
        py::arg("quad_tol") = 1e-10);

  py::class_<SpeedField>(m, "SpeedField")
      .def("w", &SpeedField::w)
      .def("w_dot", &SpeedField::w_dot)
      .def("momentum", &SpeedField::momentum)
      .def_property_readonly("s_valid", &SpeedField::s_valid)
      .def_property_readonly("w0", &SpeedField::w0)
      .def_property_readonly("uses_ode", [](const SpeedField& f) { return f.method() == SolveMethod::Ode; });

  m.def(
      "solve",
      [](const ArcChart& chart, const std::string& model, bool force_ode) {
        VelocityPowerOptions o;
        o.force_ode = force_ode;
        return solve(chart, model_from(model), o);
      },
      py::arg("chart"), py::arg("model") = "frictionless", py::arg("force_ode") = false);

  m.def(
      "surface_state",
      [](const ArcChart& chart, const SpeedField& field, const std::vector<double>& s) {
        return profile_dict(surface_state(chart, field, s));
      },
      py::arg("chart"), py::arg("field"), py::arg("stations"));

  m.def("uniform_x_stations", &uniform_x_stations, py::arg("chart"), py::arg("x_end"), py::arg("count"));

  m.def("frozen_limit_loads", [](const ArcChart& chart, double x) {
    const FrozenLoads f = frozen_limit_loads(chart, x);
    return py::dict(py::arg("N") = f.N, py::arg("f") = f.f, py::arg("wf1") = f.wf1, py::arg("wf2") = f.wf2);
  });

  m.def(
      "conservation_report",
      [](const ArcChart& chart, const SpeedField& field, const std::vector<double>& s, double E0) {
        py::list out;
        for (const auto& r : conservation_report(chart, surface_state(chart, field, s), E0)) {
          out.append(py::dict(py::arg("s") = r.s, py::arg("mass") = r.mass, py::arg("x_momentum") = r.x_momentum,
                              py::arg("y_momentum") = r.y_momentum, py::arg("energy") = r.energy));
        }
        return out;
      },
      py::arg("chart"), py::arg("field"), py::arg("stations"), py::arg("E0") = 1.0);

  m.def(
      "run_accretion",
      [](const ArcChart& chart, const std::string& model, double ds, double s_max) {
        py::list out;
        for (const auto& st : run_accretion(chart, model_from(model), ds, s_max)) {
          out.append(py::dict(py::arg("s") = st.s, py::arg("M") = st.M, py::arg("P") = st.P, py::arg("w") = st.w,
                              py::arg("N") = st.N, py::arg("f") = st.f));
        }
        return out;
      },
      py::arg("chart"), py::arg("model"), py::arg("ds"), py::arg("s_max"));

  m.def(
      "convergence_study",
      [](const ArcChart& chart, const std::string& model, const std::vector<double>& ds) {
        const ConvergenceStudy st = convergence_study(chart, model_from(model), ds);
        py::list rows;
        for (const auto& r : st.rows) {
          rows.append(py::dict(py::arg("ds") = r.ds, py::arg("err_w") = r.err_w, py::arg("err_N") = r.err_N,
                               py::arg("err_f") = r.err_f));
        }
        return py::dict(py::arg("rows") = rows, py::arg("order_w") = st.order_w, py::arg("order_N") = st.order_N,
                        py::arg("order_f") = st.order_f);
      },
      py::arg("chart"), py::arg("model"), py::arg("ds_list"));

  m.def(
      "weak_residuals",
      [](const ArcChart& chart, const SpeedField& field, std::size_t stations, double E0) {
        const double s_end = std::min(field.s_valid(), chart.s_max());
        const SurfaceProfile p = surface_state(chart, field, uniform_x_stations(chart, chart.psi_of_s(s_end), stations));
        const WeakFormWeights w = weak_weights(chart, p, E0);
        py::dict out;
        const char* names[] = {"mass", "x_momentum", "y_momentum", "energy"};
        for (const auto& bump : standard_bumps(chart)) {
          py::dict per;
          for (int eq = 0; eq < 4; ++eq) {
            per[names[eq]] = weak_form_residual(chart, w, bump.phi, static_cast<WeakEquation>(eq)).residual;
          }
          out[bump.name.c_str()] = per;
        }
        return out;
      },
      py::arg("chart"), py::arg("field"), py::arg("stations") = 512, py::arg("E0") = 1.0);

  m.def(
      "solve_config",
      [](const std::string& config_json) {
        RunConfig c;
        c.tol = default_tolerance();
        apply_json(c, nlohmann::json::parse(config_json));
        const SolveResult r = run_solve(c);
        py::dict d = profile_dict(r.surface);
        d["drag"] = r.summary.drag;
        d["lift"] = r.summary.lift;
        d["model"] = r.summary.model;
        return d;
      },
      py::arg("config_json"));

  m.def(
      "main",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ramploads");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        py::print(out.str() + err.str(), py::arg("end") = "");
        return code;
      },
      py::arg("args"));
}
