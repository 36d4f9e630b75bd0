#pragma once

#include <span>
#include <variant>

#include "pulseloss/waveform.hpp"

namespace pulseloss {

/// Thick electrodes: half-order memory kernel with time scale t_sigma.
struct StrongSkin {
  double t_sigma = 0.0;
};

/// Thin electrodes: distributed series resistance, t_R = L/R.
struct Resistive {
  double t_R = 0.0;
};

using RegimeModel = std::variant<StrongSkin, Resistive>;

/// Throws ConfigError for non-positive time constants.
void validate(const RegimeModel& model);

/// Largest t/t_sigma accepted by the small-time front formula
/// Delta = sqrt(t/t_sigma)/2.
inline constexpr double kSkinFrontValidity = 0.1;

/// Scaled complementary error function exp(x^2) erfc(x), x >= 0.
///
/// Rational Chebyshev approximations on [0, 0.5], [0.5, 4] and (4, inf),
/// evaluated so that no exp(x^2) factor is ever formed for x > 0.5.
double erfcx(double x);

/// F(t) for a step or trapezoid in the strong-skin regime; the leading part
/// of U_sigma in the resolvent representation.
double f_closed(const Waveform& w, double t_sigma, double t);

/// U_sigma(t) = V [1 - erfcx(sqrt(pi t / t_sigma))] for a step input.
double usigma_step_skin(double t, double t_sigma, double amplitude);

/// Resistive-regime U_sigma(t): the input convolved with exp(-t/t_R)/t_R.
/// Closed forms for step and trapezoid, exact piecewise-linear convolution
/// for sampled pulses.
double usigma_resistive(const Waveform& w, double t_R, double t);

/// Front attenuation Delta(t) = 1 - U_f/V for a step input.
/// Resistive: exact. StrongSkin: small-time asymptote, refused (DomainError)
/// beyond t = kSkinFrontValidity * t_sigma.
double delta_front(double t, const RegimeModel& model);

/// Grid version of the resistive convolution: U_0 is taken piecewise linear
/// between grid points (right limits at interval starts) and integrated
/// exactly against the exponential kernel.
SampledCurve exponential_convolution(const Waveform& w, double t_R,
                                     std::span<const double> times);

}  // namespace pulseloss
