#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pulseloss {

/// Ideal step of height V switched on at t = 0.
struct Step {
  double amplitude = 1.0;
};

/// Linear rise to V over rise_time, flat afterwards.
struct Trapezoid {
  double amplitude = 1.0;
  double rise_time = 1.0;
};

/// Piecewise-linear pulse through (times, values), held at the last value
/// past the end of the table.
class Sampled {
 public:
  /// Throws ConfigError unless times start at 0 and strictly increase,
  /// both arrays have the same length >= 2 and values[0] == 0.
  /// Monotonicity of the values is not enforced here; see validate_monotone.
  Sampled(std::vector<double> times, std::vector<double> values);

  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  double eval(double t) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

using Waveform = std::variant<Step, Trapezoid, Sampled>;

/// Throws ConfigError for negative amplitudes or non-positive rise times.
/// A zero amplitude is allowed and yields all-zero responses.
void validate(const Waveform& w);

/// U_0(t). A step evaluates to 0 at t = 0 (limit from the left).
double eval(const Waveform& w, double t);

/// U_0(t+), the limit from the right. Differs from eval() only for a step
/// at t = 0. Numerical integration of U_0 samples with this.
double eval_right(const Waveform& w, double t);

/// Saturation level V (the largest value for sampled pulses).
double amplitude(const Waveform& w);

bool is_builtin(const Waveform& w);

/// Rise time of a trapezoid, nullopt otherwise.
std::optional<double> knot_of(const Waveform& w);

/// Exact int_0^t U_0(s) (t - s)^{-1/2} ds for Step and Trapezoid.
/// Throws UnsupportedError for sampled pulses.
double half_integral_exact(const Waveform& w, double t);

struct MonotoneViolation {
  std::size_t index;  ///< first index i with values[i] < values[i-1]
  double previous;
  double value;
};

/// First place where a sampled pulse decreases; built-in shapes always pass.
std::optional<MonotoneViolation> validate_monotone(const Waveform& w);

/// Throws ConfigError if validate_monotone reports a violation.
void require_monotone(const Waveform& w);

std::string describe(const Waveform& w);

enum class CurveLabel { USigma, F, Phi, Delta, U0, Generic };

const char* to_string(CurveLabel label);

/// Discretized curve on a strictly increasing time axis.
struct SampledCurve {
  std::vector<double> times;
  std::vector<double> values;
  CurveLabel label = CurveLabel::Generic;

  SampledCurve() = default;
  SampledCurve(std::vector<double> t, std::vector<double> v,
               CurveLabel l = CurveLabel::Generic);

  std::size_t size() const { return times.size(); }
  /// Linear interpolation; clamped outside [times.front(), times.back()].
  double at(double t) const;
};

}  // namespace pulseloss
