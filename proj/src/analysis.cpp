#include "pulseloss/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

double time_constant(const RegimeModel& m) {
  if (const auto* s = std::get_if<StrongSkin>(&m)) return s->t_sigma;
  return std::get<Resistive>(m).t_R;
}

// First guess for the crossing: the small-time asymptote, shifted by the
// rise time for trapezoids.
double initial_guess(const TDeltaQuery& q) {
  const double tc = time_constant(q.model);
  double guess = std::holds_alternative<StrongSkin>(q.model)
                     ? tc * q.delta * q.delta / 4.0
                     : tc * q.delta;
  if (const auto k = knot_of(q.waveform)) guess += *k;
  return std::max(guess, 1e-300);
}

std::function<double(double)> closed_form_level(const TDeltaQuery& q,
                                                double v) {
  if (const auto* r = std::get_if<Resistive>(&q.model)) {
    const double t_R = r->t_R;
    return [w = q.waveform, t_R, v](double t) {
      return usigma_resistive(w, t_R, t) / v;
    };
  }
  const double t_sigma = std::get<StrongSkin>(q.model).t_sigma;
  if (std::holds_alternative<Step>(q.waveform)) {
    return [t_sigma](double t) { return usigma_step_skin(t, t_sigma, 1.0); };
  }
  if (std::holds_alternative<Trapezoid>(q.waveform)) {
    return [w = q.waveform, t_sigma, v](double t) {
      return resolvent_at(w, t_sigma, t) / v;
    };
  }
  throw UnsupportedError(
      "closed-form t_delta in the skin regime needs a step or trapezoid; "
      "use the second-kind method for sampled pulses");
}

[[noreturn]] void unreachable(double delta, double horizon, double achieved) {
  std::ostringstream os;
  os << "U_sigma/V never reaches " << delta << " before t = " << horizon
     << " (largest value " << achieved << ")";
  throw UnreachableError(os.str(), achieved);
}

double find_closed_form(const TDeltaQuery& q, double v, double horizon) {
  const auto level = closed_form_level(q, v);
  const bool resolvent = std::holds_alternative<StrongSkin>(q.model) &&
                         std::holds_alternative<Trapezoid>(q.waveform);
  if (resolvent) {
    horizon = std::min(horizon,
                       kResolventHorizon * std::get<StrongSkin>(q.model).t_sigma);
  }
  double lo = 0.0;
  double hi = std::min(initial_guess(q), horizon);
  double level_hi = level(hi);
  while (level_hi < q.delta) {
    if (hi >= horizon) unreachable(q.delta, horizon, level_hi);
    lo = hi;
    hi = std::min(2.0 * hi, horizon);
    level_hi = level(hi);
  }
  for (int iter = 0; iter < 400 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (level(mid) >= q.delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> numeric_levels(const TDeltaQuery& q, const TimeGrid& grid,
                                   double v) {
  std::vector<double> values;
  if (const auto* r = std::get_if<Resistive>(&q.model)) {
    values = exponential_convolution(q.waveform, r->t_R, grid.points()).values;
  } else {
    values = solve_second_kind(q.waveform, std::get<StrongSkin>(q.model).t_sigma,
                               grid)
                 .curve.values;
  }
  for (double& x : values) x /= v;
  return values;
}

double find_numeric(const TDeltaQuery& q, double v, double horizon) {
  double t_max = std::min(4.0 * initial_guess(q), horizon);
  for (;;) {
    const auto grid = TimeGrid::for_waveform(q.waveform, q.grid_intervals, t_max);
    const auto levels = numeric_levels(q, grid, v);
    const auto t = grid.points();
    for (std::size_t i = 1; i < levels.size(); ++i) {
      if (levels[i] >= q.delta) {
        const double s = (q.delta - levels[i - 1]) / (levels[i] - levels[i - 1]);
        return t[i - 1] + std::clamp(s, 0.0, 1.0) * (t[i] - t[i - 1]);
      }
    }
    if (t_max >= horizon) {
      unreachable(q.delta, horizon,
                  *std::max_element(levels.begin(), levels.end()));
    }
    t_max = std::min(2.0 * t_max, horizon);
  }
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

const char* to_string(TDeltaMethod m) {
  return m == TDeltaMethod::ClosedForm ? "closed-form" : "second-kind";
}

double find_t_delta(const TDeltaQuery& q) {
  if (!(q.delta > 0.0 && q.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  validate(q.model);
  require_monotone(q.waveform);
  const double v = amplitude(q.waveform);
  const double horizon = q.horizon.value_or(1e3 * time_constant(q.model));
  if (!(horizon > 0.0)) throw ConfigError("search horizon must be > 0");
  if (!(v > 0.0)) unreachable(q.delta, horizon, 0.0);
  return q.method == TDeltaMethod::ClosedForm ? find_closed_form(q, v, horizon)
                                              : find_numeric(q, v, horizon);
}

std::vector<TDeltaCell> sweep_t_delta(std::span<const double> t0_values,
                                      std::span<const double> deltas,
                                      const RegimeModel& model,
                                      TDeltaMethod method) {
  std::vector<double> t0s(t0_values.begin(), t0_values.end());
  std::vector<double> ds(deltas.begin(), deltas.end());
  std::sort(t0s.begin(), t0s.end());
  std::sort(ds.begin(), ds.end());

  std::vector<TDeltaCell> cells;
  cells.reserve(t0s.size() * ds.size());
  for (double t0 : t0s) {
    for (double d : ds) {
      TDeltaCell cell{t0, d, std::nullopt, {}};
      try {
        if (!(t0 > 0.0)) throw ConfigError("rise time t0 must be > 0");
        TDeltaQuery q;
        q.delta = d;
        q.waveform = Trapezoid{1.0, t0};
        q.model = model;
        q.method = method;
        cell.t_delta = find_t_delta(q);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<Figure1Row> figure1_data(std::span<const double> t0_over_tsigma,
                                     std::size_t n, double t_max_over_tsigma) {
  if (t0_over_tsigma.size() < 4) {
    throw ConfigError("figure 1 needs at least four t0/t_sigma ratios");
  }
  constexpr double kTSigma = 1.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Figure1Row> rows;
  for (double ratio : t0_over_tsigma) {
    if (!(ratio > 0.0)) throw ConfigError("t0/t_sigma ratios must be > 0");
    const Waveform w = Trapezoid{1.0, ratio * kTSigma};
    const auto grid = TimeGrid::for_waveform(w, n, t_max_over_tsigma * kTSigma);
    const auto f = compute_F(w, kTSigma, grid);
    const auto numeric = solve_second_kind(w, kTSigma, grid);
    std::optional<SolverReport> resolvent;
    if (grid.t_max() <= kResolventHorizon * kTSigma) {
      resolvent = resolvent_solution(w, kTSigma, grid);
    }
    const auto t = grid.points();
    for (std::size_t i = 0; i < t.size(); ++i) {
      rows.push_back({ratio, t[i] / kTSigma, f.values[i],
                      resolvent ? resolvent->curve.values[i] : nan,
                      numeric.curve.values[i]});
    }
  }
  return rows;
}

MethodComparison compare_methods(const Waveform& w, const RegimeModel& model,
                                 const TimeGrid& grid) {
  validate(model);
  require_monotone(w);
  const auto t = grid.points();
  MethodComparison out;
  out.amplitude = amplitude(w);

  std::map<SolveMethod, std::vector<double>> curves;
  if (const auto* s = std::get_if<StrongSkin>(&model)) {
    curves[SolveMethod::SecondKind] =
        solve_second_kind(w, s->t_sigma, grid).curve.values;
    if (is_builtin(w) && grid.t_max() <= kResolventHorizon * s->t_sigma) {
      curves[SolveMethod::Resolvent] =
          resolvent_solution(w, s->t_sigma, grid).curve.values;
    }
    if (const auto* step = std::get_if<Step>(&w)) {
      auto& c = curves[SolveMethod::ClosedForm];
      for (double ti : t) {
        c.push_back(usigma_step_skin(ti, s->t_sigma, step->amplitude));
      }
    }
  } else {
    const double t_R = std::get<Resistive>(model).t_R;
    curves[SolveMethod::Convolution] =
        exponential_convolution(w, t_R, t).values;
    if (is_builtin(w)) {
      auto& c = curves[SolveMethod::ClosedForm];
      for (double ti : t) c.push_back(usigma_resistive(w, t_R, ti));
    }
  }

  for (auto a = curves.begin(); a != curves.end(); ++a) {
    for (auto b = std::next(a); b != curves.end(); ++b) {
      std::vector<double> diff(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        diff[i] = std::abs(a->second[i] - b->second[i]);
      }
      out.pairs.push_back({a->first, b->first,
                           *std::max_element(diff.begin(), diff.end()),
                           mean(diff)});
    }
  }

  // Best available delta: closed form when present.
  const auto& best = curves.count(SolveMethod::ClosedForm)
                         ? curves.at(SolveMethod::ClosedForm)
                         : curves.begin()->second;
  std::vector<double> rt, rv;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (const auto* s = std::get_if<StrongSkin>(&model);
        s && t[i] > kSkinFrontValidity * s->t_sigma) {
      break;
    }
    const double front = delta_front(t[i], model);
    if (front <= 0.0) continue;
    const double level = out.amplitude > 0.0 ? best[i] / out.amplitude : 0.0;
    rt.push_back(t[i]);
    rv.push_back(level / front);
  }
  out.ratio_track = SampledCurve(std::move(rt), std::move(rv));
  return out;
}

}  // namespace pulseloss
