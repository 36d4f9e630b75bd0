#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseloss/abel_ops.hpp"
#include "pulseloss/closed_form.hpp"
#include "pulseloss/time_grid.hpp"
#include "pulseloss/waveform.hpp"

namespace pulseloss {

enum class TDeltaMethod { ClosedForm, SecondKind };

const char* to_string(TDeltaMethod m);

struct TDeltaQuery {
  double delta = 0.1;  ///< target U_sigma/V, in (0, 1)
  Waveform waveform = Step{1.0};
  RegimeModel model = StrongSkin{1.0};
  TDeltaMethod method = TDeltaMethod::ClosedForm;
  /// Search horizon; defaults to 1e3 times the model's time constant.
  std::optional<double> horizon;
  /// Grid size for the SecondKind method.
  std::size_t grid_intervals = 4096;
};

/// Smallest t with U_sigma(t)/V >= delta.
///
/// ClosedForm: bisection on the erfcx form (skin step), the Gauss resolvent
/// (skin trapezoid, t <= 5 t_sigma) or the resistive convolution, to a
/// relative width of 1e-12. SecondKind: numeric curve on a grid that is
/// doubled until the level is crossed; the crossing is interpolated
/// linearly inside one grid step.
///
/// Throws UnreachableError (carrying the largest level reached) when the
/// horizon is hit, UnsupportedError for skin-regime sampled pulses with
/// ClosedForm.
double find_t_delta(const TDeltaQuery& q);

struct TDeltaCell {
  double t0 = 0.0;
  double delta = 0.0;
  std::optional<double> t_delta;
  std::string error;  ///< non-empty when the cell failed
};

/// t_delta for every (t0, delta) pair with a unit trapezoid input. Rows are
/// sorted by t0, then delta. Failed cells carry the error text and do not
/// stop the sweep.
std::vector<TDeltaCell> sweep_t_delta(std::span<const double> t0_values,
                                      std::span<const double> deltas,
                                      const RegimeModel& model,
                                      TDeltaMethod method = TDeltaMethod::ClosedForm);

inline constexpr double kDefaultFigureRatios[] = {1e-3, 1e-2, 1e-1, 1.0};
inline constexpr double kDefaultDeltas[] = {0.05, 0.1, 0.2, 0.3};

struct Figure1Row {
  double t0_over_tsigma;
  double t_over_tsigma;
  double f_over_v;
  double usigma_resolvent;  ///< NaN past the resolvent horizon
  double usigma_numeric;
};

/// Trapezoid responses in units t/t_sigma and U/V for each rise-time ratio
/// (at least four ratios). Each ratio gets its own knot-aligned grid.
std::vector<Figure1Row> figure1_data(std::span<const double> t0_over_tsigma,
                                     std::size_t n, double t_max_over_tsigma);

struct PairDiscrepancy {
  SolveMethod first;
  SolveMethod second;
  double max_abs = 0.0;   ///< volts
  double mean_abs = 0.0;  ///< volts
};

struct MethodComparison {
  double amplitude = 0.0;
  std::vector<PairDiscrepancy> pairs;
  /// delta(t)/Delta(t) wherever the front formula applies.
  SampledCurve ratio_track;
};

/// Cross-validates every solution path that applies to (w, model) on `grid`.
MethodComparison compare_methods(const Waveform& w, const RegimeModel& model,
                                 const TimeGrid& grid);

}  // namespace pulseloss
