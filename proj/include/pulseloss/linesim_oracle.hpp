#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pulseloss/waveform.hpp"

namespace pulseloss {

/// Linear RLC line driven by a step at z = 0.
struct FdtdConfig {
  double inductance = 250e-9;    ///< L, H/m
  double capacitance = 100e-12;  ///< C, F/m
  double resistance = 0.5;       ///< R, Ohm/m; 0 gives a lossless line
  double length = 400.0;         ///< m
  std::size_t n_cells = 4000;
  double cfl = 1.0;
  double amplitude = 1.0;        ///< V
  double t_end = 1e-6;           ///< s
  /// Where front arrival is timed; defaults to half the distance the front
  /// covers by t_end.
  std::optional<double> probe_position;
  /// Cells between the analytic front and the U_f read-out.
  std::size_t standoff_cells = 3;
};

void validate(const FdtdConfig& cfg);

struct FdtdProbe {
  SampledCurve delta_curve;      ///< Delta(t) = 1 - U_f/V
  SampledCurve sigma_curve;      ///< delta(t) = sum R I dz / V
  SampledCurve front_impedance;  ///< U/I at the read-out cell, Ohm
  std::vector<double> field_energy;     ///< J, same times as the curves
  std::vector<double> injected_energy;  ///< J, same times as the curves
  double probe_position = 0.0;
  std::optional<double> probe_arrival;  ///< time U reaches V/2 at the probe
  double dz = 0.0;
  double dt = 0.0;
};

/// Leapfrog on staggered U (nodes) / I (half nodes); the R I term is taken
/// at the mid time level. The drive rises to V over one time step.
FdtdProbe simulate_step(const FdtdConfig& cfg);

struct FdtdVerification {
  double max_dev_delta = 0.0;  ///< relative to 1 - exp(-t/2t_R)
  double max_dev_sigma = 0.0;  ///< relative to 1 - exp(-t/t_R)
  double ratio_time = 0.0;
  double ratio = 0.0;          ///< delta/Delta at ratio_time
  std::size_t samples = 0;
};

/// Deviations over [window_start * t_R, t_end]; the ratio is read at
/// ratio_at * t_R (or the first sample after it).
FdtdVerification verify_against_closed_form(const FdtdProbe& probe, double t_R,
                                            double window_start = 0.1,
                                            double ratio_at = 0.05);

}  // namespace pulseloss
