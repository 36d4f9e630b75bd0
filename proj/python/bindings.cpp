#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "pulseloss/abel_ops.hpp"
#include "pulseloss/analysis.hpp"
#include "pulseloss/closed_form.hpp"
#include "pulseloss/error.hpp"
#include "pulseloss/linesim_oracle.hpp"
#include "pulseloss/units_params.hpp"
#include "pulseloss/validation.hpp"

namespace py = pybind11;
using namespace pulseloss;

namespace {

py::array_t<double> array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict report_dict(const SolverReport& r) {
  py::dict d;
  d["t"] = array(r.curve.times);
  d["u"] = array(r.curve.values);
  d["residual"] = r.max_step_residual;
  d["method"] = to_string(r.method);
  d["grid"] = r.grid;
  return d;
}

RegimeModel regime(const std::string& name, double time_constant) {
  if (name == "skin") return StrongSkin{time_constant};
  if (name == "resistive") return Resistive{time_constant};
  throw ConfigError("regime must be 'skin' or 'resistive'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pulse attenuation in transmission lines with lossy electrodes";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<UnreachableError>(m, "UnreachableError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  (void)config_error;

  py::class_<Step>(m, "Step")
      .def(py::init<double>(), py::arg("amplitude") = 1.0)
      .def_readwrite("amplitude", &Step::amplitude);
  py::class_<Trapezoid>(m, "Trapezoid")
      .def(py::init<double, double>(), py::arg("amplitude"), py::arg("rise_time"))
      .def_readwrite("amplitude", &Trapezoid::amplitude)
      .def_readwrite("rise_time", &Trapezoid::rise_time);
  py::class_<Sampled>(m, "Sampled")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("times"),
           py::arg("values"))
      .def("__call__", &Sampled::eval);

  m.def(
      "derive_constants",
      [](const std::string& geometry, double sigma, std::optional<double> r_outer,
         std::optional<double> r_inner, std::optional<double> gap,
         std::optional<double> thickness, std::optional<double> resistance) {
        LineSpec spec;
        if (geometry == "coax") {
          if (!r_outer || !r_inner) throw ConfigError("coax needs r_outer and r_inner");
          spec.geometry = Coaxial{*r_outer, *r_inner};
        } else if (geometry == "stripline") {
          if (!gap) throw ConfigError("stripline needs gap");
          spec.geometry = Stripline{*gap};
        } else {
          throw ConfigError("geometry must be 'coax' or 'stripline'");
        }
        spec.material = {sigma, thickness};
        spec.resistance_override = resistance;
        const auto tc = derive_constants(spec);
        py::dict d;
        d["inductance"] = tc.inductance;
        d["diffusion"] = tc.diffusion;
        d["t_sigma"] = tc.t_sigma;
        d["t_R"] = tc.t_R;
        d["resistance"] = tc.resistance;
        return d;
      },
      py::arg("geometry"), py::arg("sigma"), py::kw_only(), py::arg("r_outer") = py::none(),
      py::arg("r_inner") = py::none(), py::arg("gap") = py::none(),
      py::arg("thickness") = py::none(), py::arg("resistance") = py::none());

  m.def("erfcx", py::vectorize(&erfcx), py::arg("x"));
  m.def("usigma_step_skin", py::vectorize(&usigma_step_skin), py::arg("t"),
        py::arg("t_sigma"), py::arg("amplitude") = 1.0);
  m.def(
      "usigma_resistive",
      [](const Waveform& w, double t_R, double t) { return usigma_resistive(w, t_R, t); },
      py::arg("waveform"), py::arg("t_R"), py::arg("t"));
  m.def(
      "delta_front",
      [](double t, const std::string& name, double tc) { return delta_front(t, regime(name, tc)); },
      py::arg("t"), py::arg("regime"), py::arg("time_constant"));

  m.def(
      "solve_second_kind",
      [](const Waveform& w, double t_sigma, std::size_t n, double t_max, bool correction) {
        return report_dict(solve_second_kind(w, t_sigma, TimeGrid::for_waveform(w, n, t_max),
                                             {correction}));
      },
      py::arg("waveform"), py::arg("t_sigma"), py::arg("n"), py::arg("t_max"),
      py::arg("starting_correction") = true);
  m.def(
      "resolvent_solution",
      [](const Waveform& w, double t_sigma, std::size_t n, double t_max) {
        return report_dict(resolvent_solution(w, t_sigma, TimeGrid::for_waveform(w, n, t_max)));
      },
      py::arg("waveform"), py::arg("t_sigma"), py::arg("n"), py::arg("t_max"));
  m.def(
      "half_integral",
      [](std::vector<double> t, std::vector<double> f) {
        return array(half_integral(SampledCurve(std::move(t), std::move(f))).values);
      },
      py::arg("t"), py::arg("f"));
  m.def(
      "abel_invert",
      [](std::vector<double> t, std::vector<double> phi) {
        return array(abel_invert(SampledCurve(std::move(t), std::move(phi))).values);
      },
      py::arg("t"), py::arg("phi"));

  m.def(
      "find_t_delta",
      [](double delta, const Waveform& w, const std::string& name, double tc,
         const std::string& method, std::optional<double> horizon) {
        TDeltaQuery q;
        q.delta = delta;
        q.waveform = w;
        q.model = regime(name, tc);
        if (method == "second-kind") {
          q.method = TDeltaMethod::SecondKind;
        } else if (method != "closed-form") {
          throw ConfigError("method must be 'closed-form' or 'second-kind'");
        }
        q.horizon = horizon;
        return find_t_delta(q);
      },
      py::arg("delta"), py::arg("waveform"), py::arg("regime"), py::arg("time_constant"),
      py::arg("method") = "closed-form", py::arg("horizon") = py::none());

  m.def(
      "figure1_data",
      [](std::vector<double> ratios, std::size_t n, double t_max) {
        const auto rows = figure1_data(ratios, n, t_max);
        py::array_t<double> out({static_cast<py::ssize_t>(rows.size()), py::ssize_t{5}});
        auto a = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          const auto k = static_cast<py::ssize_t>(i);
          a(k, 0) = r.t0_over_tsigma;
          a(k, 1) = r.t_over_tsigma;
          a(k, 2) = r.f_over_v;
          a(k, 3) = r.usigma_resolvent;
          a(k, 4) = r.usigma_numeric;
        }
        return out;
      },
      py::arg("ratios") = std::vector<double>(std::begin(kDefaultFigureRatios),
                                              std::end(kDefaultFigureRatios)),
      py::arg("n") = 4096, py::arg("t_max") = 2.0);

  m.def(
      "simulate_step",
      [](double L, double C, double R, double length, std::size_t n_cells, double cfl,
         double V, double t_end) {
        FdtdConfig cfg{L, C, R, length, n_cells, cfl, V, t_end, std::nullopt, 3};
        FdtdProbe p;
        {
          py::gil_scoped_release release;
          p = simulate_step(cfg);
        }
        py::dict d;
        d["t"] = array(p.delta_curve.times);
        d["Delta"] = array(p.delta_curve.values);
        d["delta"] = array(p.sigma_curve.values);
        d["front_impedance"] = array(p.front_impedance.values);
        d["dz"] = p.dz;
        d["dt"] = p.dt;
        return d;
      },
      py::kw_only(), py::arg("L") = 250e-9, py::arg("C") = 100e-12, py::arg("R") = 0.5,
      py::arg("length") = 400.0, py::arg("n_cells") = 4000, py::arg("cfl") = 1.0,
      py::arg("V") = 1.0, py::arg("t_end") = 1e-6);

  m.def(
      "run_validation",
      [](std::optional<std::string> only, double perturbation) {
        ValidationOptions opts{only, perturbation};
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_validation(opts);
        }
        py::list out;
        for (const auto& r : results) {
          out.append(py::module_::import("json").attr("loads")(to_json(r).dump()));
        }
        return out;
      },
      py::arg("only") = py::none(), py::arg("t_sigma_perturbation") = 0.0);
}
