#pragma once

#include <optional>
#include <variant>

namespace pulseloss {

/// Vacuum permeability, H/m.
inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;

struct ElectrodeMaterial {
  double sigma = 0.0;                 ///< conductivity, S/m
  std::optional<double> thickness;    ///< m; absent means effectively infinite
};

/// Coaxial line; radii of the dielectric tube.
struct Coaxial {
  double r_outer = 0.0;
  double r_inner = 0.0;
};

/// Wide stripline with electrode gap d. Per-length quantities are normalized
/// to unit strip width.
struct Stripline {
  double gap = 0.0;
};

using Geometry = std::variant<Coaxial, Stripline>;

struct LineSpec {
  Geometry geometry;
  ElectrodeMaterial material;
  /// Sum of both electrodes' per-length resistances, Ohm/m. Bypasses the
  /// thickness-based estimate.
  std::optional<double> resistance_override;
};

struct TimeConstants {
  double inductance = 0.0;          ///< L, H/m
  double diffusion = 0.0;           ///< D_M = 1/(mu0 sigma), m^2/s
  double t_sigma = 0.0;             ///< strong-skin attenuation time, s
  std::optional<double> t_R;        ///< L/R, s
  std::optional<double> resistance; ///< R, Ohm/m
};

enum class SkinRegime { StrongSkin, Resistive, Indeterminate };

/// Gray-zone factors for skin_regime().
inline constexpr double kRegimeLow = 1.0 / 3.0;
inline constexpr double kRegimeHigh = 3.0;

/// Throws ConfigError when any LineSpec invariant is violated.
void validate(const LineSpec& spec);

/// Magnetic diffusion coefficient 1/(mu0 sigma).
double magnetic_diffusion(double sigma);

/// Derives L, D_M, t_sigma and, when a resistance is known, R and t_R.
TimeConstants derive_constants(const LineSpec& spec);

/// t_R or a ConfigError explaining that neither thickness nor
/// resistance_override was given.
double require_t_R(const TimeConstants& tc);

/// Diffusion depth 2 sqrt(D_M t).
double diffusion_depth(double t, double sigma);

/// Compares electrode thickness with the diffusion depth at time t.
SkinRegime skin_regime(double t, const ElectrodeMaterial& material);

const char* to_string(SkinRegime regime);

}  // namespace pulseloss
