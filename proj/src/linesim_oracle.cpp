#include "pulseloss/linesim_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pulseloss/error.hpp"

namespace pulseloss {

void validate(const FdtdConfig& cfg) {
  if (!(cfg.inductance > 0.0) || !(cfg.capacitance > 0.0)) {
    throw ConfigError("fdtd: L and C must be > 0");
  }
  if (!(cfg.resistance >= 0.0)) throw ConfigError("fdtd: R must be >= 0");
  if (!(cfg.length > 0.0)) throw ConfigError("fdtd: length must be > 0");
  if (cfg.n_cells < 100) throw ConfigError("fdtd: n_cells must be >= 100");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
    throw ConfigError("fdtd: CFL number must lie in (0, 1]");
  }
  if (!(cfg.amplitude > 0.0)) throw ConfigError("fdtd: V must be > 0");
  if (!(cfg.t_end > 0.0)) throw ConfigError("fdtd: t_end must be > 0");
  const double transit = cfg.length * std::sqrt(cfg.inductance * cfg.capacitance);
  if (cfg.t_end > transit) {
    throw ConfigError("fdtd: the front reaches the far end before t_end");
  }
  if (cfg.probe_position &&
      !(*cfg.probe_position > 0.0 && *cfg.probe_position < cfg.length)) {
    throw ConfigError("fdtd: probe must lie inside the line");
  }
}

FdtdProbe simulate_step(const FdtdConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.n_cells;
  const double L = cfg.inductance;
  const double C = cfg.capacitance;
  const double R = cfg.resistance;
  const double V = cfg.amplitude;
  const double speed = 1.0 / std::sqrt(L * C);
  const double dz = cfg.length / static_cast<double>(n);
  const double dt = cfg.cfl * dz / speed;
  const auto steps = static_cast<std::size_t>(std::floor(cfg.t_end / dt * (1.0 + 1e-12)));

  // (L/dt + R/2) I' = (L/dt - R/2) I - dU/dz
  const double ia = (L / dt - R / 2.0) / (L / dt + R / 2.0);
  const double ib = 1.0 / (dz * (L / dt + R / 2.0));
  const double uc = dt / (C * dz);

  std::vector<double> u(n + 1, 0.0), cur(n, 0.0), prev(n, 0.0);
  FdtdProbe probe;
  probe.dz = dz;
  probe.dt = dt;
  probe.probe_position = cfg.probe_position.value_or(0.5 * cfg.t_end * speed);
  const auto probe_node =
      static_cast<std::size_t>(std::lround(probe.probe_position / dz));

  std::vector<double> td, vd, vs, vz;
  double injected = 0.0;
  double probe_prev = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    // Currents to level step + 1/2.
    prev = cur;
    for (std::size_t i = 0; i < n; ++i) {
      cur[i] = ia * cur[i] - ib * (u[i + 1] - u[i]);
    }

    // Sample level `step`, currents averaged from the two half levels.
    const double t = static_cast<double>(step) * dt;
    const auto front = static_cast<std::size_t>(std::floor(t * speed / dz + 1e-9));
    if (step > 0 && front > cfg.standoff_cells) {
      const std::size_t k = front - cfg.standoff_cells;
      // Discrete energy conserved by the scheme: interior nodes plus the
      // product of the two current half levels.
      double drop = 0.0;
      double energy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        drop += R * 0.5 * (prev[i] + cur[i]) * dz;
        energy += 0.5 * L * prev[i] * cur[i] * dz;
      }
      for (std::size_t i = 1; i < n; ++i) energy += 0.5 * C * u[i] * u[i] * dz;
      // Linear extrapolation from behind the standoff to the analytic front.
      const double u_front =
          u[k] + static_cast<double>(cfg.standoff_cells) * (u[k] - u[k - 1]);
      const double i_read = 0.25 * (prev[k] + cur[k] + prev[k - 1] + cur[k - 1]);
      td.push_back(t);
      vd.push_back(1.0 - u_front / V);
      vs.push_back(drop / V);
      vz.push_back(i_read != 0.0 ? u[k] / i_read : 0.0);
      probe.field_energy.push_back(energy);
      probe.injected_energy.push_back(injected);
    }

    // Voltages to level step + 1; the source reaches V after one step.
    const double u0_old = u[0];
    for (std::size_t i = 1; i < n; ++i) u[i] -= uc * (cur[i] - cur[i - 1]);
    u[0] = V;
    u[n] = 0.0;
    injected += 0.5 * (u0_old + u[0]) * cur[0] * dt;

    if (!probe.probe_arrival && probe_node <= n && u[probe_node] >= 0.5 * V) {
      const double s = (0.5 * V - probe_prev) / (u[probe_node] - probe_prev);
      probe.probe_arrival = (static_cast<double>(step) + s) * dt;
    }
    if (probe_node <= n) probe_prev = u[probe_node];
  }

  probe.delta_curve = SampledCurve(td, std::move(vd), CurveLabel::Delta);
  probe.sigma_curve = SampledCurve(td, std::move(vs), CurveLabel::USigma);
  probe.front_impedance = SampledCurve(std::move(td), std::move(vz));
  return probe;
}

FdtdVerification verify_against_closed_form(const FdtdProbe& probe, double t_R,
                                            double window_start,
                                            double ratio_at) {
  const auto& d = probe.delta_curve;
  const auto& s = probe.sigma_curve;
  if (d.size() == 0 || s.size() != d.size()) {
    throw ConfigError("fdtd verification: probe holds no samples");
  }
  if (!(t_R > 0.0)) throw ConfigError("fdtd verification: t_R must be > 0");
  FdtdVerification out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = d.times[i];
    if (t < window_start * t_R) continue;
    const double big = -std::expm1(-t / (2.0 * t_R));
    const double small = -std::expm1(-t / t_R);
    out.max_dev_delta = std::max(out.max_dev_delta, std::abs(d.values[i] / big - 1.0));
    out.max_dev_sigma = std::max(out.max_dev_sigma, std::abs(s.values[i] / small - 1.0));
    ++out.samples;
  }
  const auto it = std::lower_bound(d.times.begin(), d.times.end(), ratio_at * t_R);
  const std::size_t k = it == d.times.end() ? d.size() - 1
                                            : static_cast<std::size_t>(it - d.times.begin());
  out.ratio_time = d.times[k];
  out.ratio = d.values[k] != 0.0 ? s.values[k] / d.values[k] : 0.0;
  return out;
}

}  // namespace pulseloss
