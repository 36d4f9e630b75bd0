#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "pulseloss/abel_ops.hpp"
#include "pulseloss/analysis.hpp"
#include "pulseloss/closed_form.hpp"
#include "pulseloss/error.hpp"
#include "pulseloss/io.hpp"
#include "pulseloss/linesim_oracle.hpp"
#include "pulseloss/validation.hpp"

namespace pulseloss::cli {
namespace {

enum Exit { kOk = 0, kValidation = 1, kConfig = 2, kUnsupported = 3 };

// Raw flag text; applied over the config file after parsing.
struct Flags {
  std::string config;
  std::string geometry, r_outer, r_inner, gap, sigma, thickness, resistance;
  std::string t_sigma, t_R, output;
  std::string waveform, amplitude, rise_time;
  std::string regime, method, t_max, deltas, t0, ratios, figure_t_max;
  std::size_t n = 0;
  std::string only, probe_csv;
  double perturb = 0.0;
};

void add_line_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--geometry", f.geometry, "coax | stripline");
  app->add_option("--r-outer", f.r_outer, "coax outer radius r_e (e.g. 5mm)");
  app->add_option("--r-inner", f.r_inner, "coax inner radius r_i");
  app->add_option("--gap", f.gap, "stripline electrode gap d");
  app->add_option("--sigma", f.sigma, "electrode conductivity, S/m");
  app->add_option("--thickness", f.thickness, "electrode thickness");
  app->add_option("--resistance", f.resistance, "series resistance R, Ohm/m");
  app->add_option("--t-sigma", f.t_sigma, "t_sigma, overrides the line");
  app->add_option("--t-R", f.t_R, "t_R = L/R, overrides the line");
  app->add_option("-o,--output", f.output, "output file (default stdout)");
}

RunConfig merged(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  auto set = [](std::optional<double>& dst, const std::string& src, Dim dim) {
    if (!src.empty()) dst = parse_quantity(src, dim);
  };
  if (!f.geometry.empty()) c.line.geometry = f.geometry;
  set(c.line.r_outer, f.r_outer, Dim::Length);
  set(c.line.r_inner, f.r_inner, Dim::Length);
  set(c.line.gap, f.gap, Dim::Length);
  set(c.line.sigma, f.sigma, Dim::None);
  set(c.line.thickness, f.thickness, Dim::Length);
  set(c.line.resistance, f.resistance, Dim::None);
  set(c.t_sigma, f.t_sigma, Dim::Time);
  set(c.t_R, f.t_R, Dim::Time);
  if (!f.output.empty()) c.output = f.output;
  if (!f.waveform.empty()) {
    if (f.waveform == "step" || f.waveform == "trapezoid") {
      c.waveform.kind = f.waveform;
    } else {
      c.waveform.kind = "file";
      c.waveform.path = f.waveform;
    }
  }
  if (!f.amplitude.empty()) c.waveform.amplitude = parse_quantity(f.amplitude, Dim::None);
  set(c.waveform.rise_time, f.rise_time, Dim::Time);
  if (!f.regime.empty()) c.regime = f.regime;
  if (!f.method.empty()) c.method = f.method;
  set(c.grid.t_max, f.t_max, Dim::Time);
  if (f.n) c.grid.n = f.n;
  if (!f.deltas.empty()) c.deltas = parse_list(f.deltas, Dim::None);
  if (!f.t0.empty()) c.t0 = parse_list(f.t0, Dim::Time);
  if (!f.ratios.empty()) c.ratios = parse_list(f.ratios, Dim::None);
  if (!f.figure_t_max.empty()) c.figure_t_max = parse_quantity(f.figure_t_max, Dim::None);
  return c;
}

// Output goes to the configured file, or to `out`.
void emit(const RunConfig& c, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (c.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + c.output.string());
  body(file);
}

std::string num(double x) { return format_number(x); }

struct Times {
  std::optional<TimeConstants> constants;
  std::optional<double> t_sigma, t_R;
};

Times resolve_times(const RunConfig& c) {
  Times t;
  if (has_line(c.line)) {
    t.constants = derive_constants(build_line(c.line));
    t.t_sigma = t.constants->t_sigma;
    t.t_R = t.constants->t_R;
  }
  if (c.t_sigma) t.t_sigma = c.t_sigma;
  if (c.t_R) t.t_R = c.t_R;
  return t;
}

RegimeModel resolve_regime(const RunConfig& c, const Times& t) {
  auto skin = [&] {
    if (!t.t_sigma) throw ConfigError("skin regime needs a line or --t-sigma");
    RegimeModel m = StrongSkin{*t.t_sigma};
    validate(m);
    return m;
  };
  auto resistive = [&] {
    if (!t.t_R) {
      throw ConfigError("resistive regime needs t_R: give --t-R, --resistance or an electrode thickness");
    }
    RegimeModel m = Resistive{*t.t_R};
    validate(m);
    return m;
  };
  if (c.regime == "skin") return skin();
  if (c.regime == "resistive") return resistive();
  if (c.regime != "auto") {
    throw ConfigError("regime must be skin, resistive or auto, got '" + c.regime + "'");
  }
  if (has_line(c.line) && c.line.thickness && t.t_sigma) {
    // Decide at the end of the requested window (default 3 t_sigma).
    const double at = c.grid.t_max.value_or(3.0 * *t.t_sigma);
    switch (skin_regime(at, ElectrodeMaterial{*c.line.sigma, c.line.thickness})) {
      case SkinRegime::StrongSkin: return skin();
      case SkinRegime::Resistive: return resistive();
      case SkinRegime::Indeterminate:
        throw ConfigError("regime is indeterminate at t = " + num(at) +
                          " s (thickness close to the diffusion depth); pass --regime");
    }
  }
  if (t.t_sigma && !t.t_R) return skin();
  if (t.t_R && !t.t_sigma) return resistive();
  if (t.t_sigma) return skin();
  throw ConfigError("no line or time constant given");
}

std::string default_method(const RegimeModel& m, const Waveform& w, double t_max) {
  if (const auto* s = std::get_if<StrongSkin>(&m)) {
    if (std::holds_alternative<Step>(w)) return "closed-form";
    if (std::holds_alternative<Trapezoid>(w) && t_max <= kResolventHorizon * s->t_sigma) {
      return "resolvent";
    }
    return "second-kind";
  }
  return is_builtin(w) ? "closed-form" : "convolution";
}

int cmd_params(const Flags& f, std::ostream& out) {
  const auto c = merged(f);
  if (!has_line(c.line)) throw ConfigError("params needs a line (--geometry ...)");
  const auto spec = build_line(c.line);
  const auto tc = derive_constants(spec);
  auto j = to_json(tc);
  j["geometry"] = c.line.geometry;
  j["regime_at_t_sigma"] = to_string(skin_regime(tc.t_sigma, spec.material));
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kOk;
}

int cmd_attenuate(const Flags& f, std::ostream& out) {
  const auto c = merged(f);
  const auto times = resolve_times(c);
  const auto model = resolve_regime(c, times);
  const auto w = build_waveform(c.waveform);
  const bool skin = std::holds_alternative<StrongSkin>(model);
  const double tc = skin ? std::get<StrongSkin>(model).t_sigma : std::get<Resistive>(model).t_R;
  const double t_max = c.grid.t_max.value_or(skin ? 3.0 * tc : 5.0 * tc);
  const auto grid = TimeGrid::for_waveform(w, c.grid.n, t_max);
  const auto t = grid.points();
  const std::string method = c.method.empty() ? default_method(model, w, t_max) : c.method;

  std::vector<double> u;
  std::optional<double> residual;
  auto unsupported = [&] {
    throw UnsupportedError("method '" + method + "' does not apply to a " + describe(w) +
                           " in the " + (skin ? "skin" : "resistive") + " regime");
  };
  if (skin) {
    if (method == "closed-form") {
      const auto* step = std::get_if<Step>(&w);
      if (!step) unsupported();
      for (double ti : t) u.push_back(usigma_step_skin(ti, tc, step->amplitude));
    } else if (method == "second-kind") {
      auto rep = solve_second_kind(w, tc, grid);
      residual = rep.max_step_residual;
      u = std::move(rep.curve.values);
    } else if (method == "resolvent") {
      if (!is_builtin(w)) unsupported();
      auto rep = resolvent_solution(w, tc, grid);
      residual = rep.max_step_residual;
      u = std::move(rep.curve.values);
    } else if (method == "convolution") {
      unsupported();
    } else {
      throw ConfigError("unknown method '" + method + "'");
    }
  } else {
    if (method == "closed-form") {
      for (double ti : t) u.push_back(usigma_resistive(w, tc, ti));
    } else if (method == "convolution") {
      u = exponential_convolution(w, tc, t).values;
    } else if (method == "second-kind" || method == "resolvent") {
      unsupported();
    } else {
      throw ConfigError("unknown method '" + method + "'");
    }
  }

  const double v = amplitude(w);
  CsvTable table;
  table.comments = {"pulseloss attenuate",
                    "method: " + method,
                    std::string("regime: ") + (skin ? "skin t_sigma=" : "resistive t_R=") + num(tc) + " s",
                    "waveform: " + describe(w),
                    "grid: " + grid.describe()};
  if (residual) table.comments.push_back("max_step_residual: " + num(*residual));
  table.header = {"t_s", "Usigma_V", "Usigma_over_V"};
  std::vector<double> ratio(u.size(), 0.0);
  if (v > 0.0) {
    for (std::size_t i = 0; i < u.size(); ++i) ratio[i] = u[i] / v;
  }
  table.columns = {{t.begin(), t.end()}, u, ratio};
  emit(c, out, [&](std::ostream& os) { write_csv(os, table); });
  return kOk;
}

int cmd_tdelta(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto c = merged(f);
  const auto model = resolve_regime(c, resolve_times(c));
  const bool skin = std::holds_alternative<StrongSkin>(model);
  const double tc = skin ? std::get<StrongSkin>(model).t_sigma : std::get<Resistive>(model).t_R;
  TDeltaMethod method = TDeltaMethod::ClosedForm;
  if (c.method == "second-kind") {
    method = TDeltaMethod::SecondKind;
  } else if (!c.method.empty() && c.method != "closed-form") {
    throw ConfigError("tdelta method must be closed-form or second-kind");
  }
  std::vector<double> t0 = c.t0;
  if (t0.empty()) {
    for (double r : kDefaultFigureRatios) t0.push_back(r * tc);
  }
  std::vector<double> deltas = c.deltas;
  if (deltas.empty()) deltas.assign(std::begin(kDefaultDeltas), std::end(kDefaultDeltas));
  for (double d : deltas) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("deltas must lie in (0, 1)");
  }

  const auto cells = sweep_t_delta(t0, deltas, model, method);
  std::size_t reached = 0;
  emit(c, out, [&](std::ostream& os) {
    os << "# pulseloss tdelta\n# method: " << to_string(method) << "\n# regime: "
       << (skin ? "skin t_sigma=" : "resistive t_R=") << num(tc) << " s\n"
       << "# waveform: unit trapezoid, rise time t0_s\n"
       << "t0_s,delta,t_delta_s,t_delta_over_tc,status\n";
    for (const auto& cell : cells) {
      os << num(cell.t0) << ',' << num(cell.delta) << ',';
      if (cell.t_delta) {
        ++reached;
        os << num(*cell.t_delta) << ',' << num(*cell.t_delta / tc) << ",ok\n";
      } else {
        os << "nan,nan,unreached\n";
      }
    }
  });
  for (const auto& cell : cells) {
    if (!cell.t_delta) {
      err << "t0=" << num(cell.t0) << " delta=" << num(cell.delta) << ": " << cell.error << '\n';
    }
  }
  return reached > 0 ? kOk : kValidation;
}

int cmd_figure1(const Flags& f, std::ostream& out) {
  const auto c = merged(f);
  std::vector<double> ratios = c.ratios;
  if (ratios.empty()) {
    ratios.assign(std::begin(kDefaultFigureRatios), std::end(kDefaultFigureRatios));
  }
  const auto rows = figure1_data(ratios, c.grid.n, c.figure_t_max);
  CsvTable table;
  table.comments = {"pulseloss figure1",
                    "units: t/t_sigma, U/V; trapezoid inputs",
                    "grid: " + std::to_string(c.grid.n) + " intervals on [0, " +
                        num(c.figure_t_max) + "] t_sigma, knot at t0"};
  table.header = {"t0_over_tsigma", "t_over_tsigma", "F_over_V", "Usigma_resolvent",
                  "Usigma_numeric"};
  table.columns.assign(5, {});
  for (const auto& r : rows) {
    table.columns[0].push_back(r.t0_over_tsigma);
    table.columns[1].push_back(r.t_over_tsigma);
    table.columns[2].push_back(r.f_over_v);
    table.columns[3].push_back(r.usigma_resolvent);
    table.columns[4].push_back(r.usigma_numeric);
  }
  emit(c, out, [&](std::ostream& os) { write_csv(os, table); });
  return kOk;
}

int cmd_validate(const Flags& f, std::ostream& out, std::ostream& err) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (!f.output.empty()) c.output = f.output;
  ValidationOptions opts;
  if (!f.only.empty()) opts.only = f.only;
  opts.t_sigma_perturbation = f.perturb;
  const auto results =
      run_validation(opts, [&](const CheckResult& r) { err << format_line(r) << '\n'; });
  bool all = true;
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    j["checks"].push_back(to_json(r));
  }
  j["passed"] = all;
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });

  if (!f.probe_csv.empty()) {
    const auto probe = simulate_step(c.fdtd);
    CsvTable table;
    table.comments = {"pulseloss fdtd probe",
                      "dz_m: " + num(probe.dz), "dt_s: " + num(probe.dt)};
    table.header = {"t_s", "Delta", "delta", "front_impedance_ohm"};
    table.columns = {probe.delta_curve.times, probe.delta_curve.values,
                     probe.sigma_curve.values, probe.front_impedance.values};
    std::ofstream file(f.probe_csv, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + f.probe_csv);
    write_csv(file, table);
  }
  return all ? kOk : kValidation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse attenuation in lossy transmission lines"};
  app.require_subcommand(1);
  Flags f;

  auto* params = app.add_subcommand("params", "Derive L, D_M, t_sigma, t_R from the line");
  add_line_flags(params, f);

  auto* att = app.add_subcommand("attenuate", "U_sigma(t) curve as CSV");
  add_line_flags(att, f);
  att->add_option("--waveform", f.waveform, "step | trapezoid | <file.csv>");
  att->add_option("--amplitude", f.amplitude, "V, volts");
  att->add_option("--rise-time", f.rise_time, "trapezoid rise time t0");
  att->add_option("--regime", f.regime, "skin | resistive | auto");
  att->add_option("--method", f.method, "closed-form | second-kind | resolvent | convolution");
  att->add_option("-n,--points", f.n, "grid intervals");
  att->add_option("--t-max", f.t_max, "end of the time window");

  auto* td = app.add_subcommand("tdelta", "t_delta sweep over rise times and levels");
  add_line_flags(td, f);
  td->add_option("--regime", f.regime, "skin | resistive | auto");
  td->add_option("--method", f.method, "closed-form | second-kind");
  td->add_option("--deltas", f.deltas, "comma list of levels in (0, 1)");
  td->add_option("--t0", f.t0, "comma list of rise times");

  auto* fig = app.add_subcommand("figure1", "Trapezoid responses in units of t_sigma");
  fig->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  fig->add_option("--ratios", f.ratios, "comma list of t0/t_sigma (at least four)");
  fig->add_option("-n,--points", f.n, "grid intervals per ratio");
  fig->add_option("--t-max", f.figure_t_max, "window end in units of t_sigma");
  fig->add_option("-o,--output", f.output, "output file (default stdout)");

  auto* val = app.add_subcommand("validate", "Run the acceptance checks");
  val->add_option("--config", f.config, "JSON config file (fdtd block)")->check(CLI::ExistingFile);
  val->add_option("--only", f.only, "check id or group: closed-form, abel, tdelta, fdtd");
  val->add_option("--perturb-t-sigma", f.perturb, "relative t_sigma error injected into cross-path checks");
  val->add_option("--probe-csv", f.probe_csv, "write the FDTD probe curves here");
  val->add_option("-o,--output", f.output, "JSON report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (params->parsed()) return cmd_params(f, out);
    if (att->parsed()) return cmd_attenuate(f, out);
    if (td->parsed()) return cmd_tdelta(f, out, err);
    if (fig->parsed()) return cmd_figure1(f, out);
    return cmd_validate(f, out, err);
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::domain_error& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }
}

}  // namespace pulseloss::cli
