#include "pulseloss/units_params.hpp"

#include <cmath>
#include <numbers>

#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

void validate_material(const ElectrodeMaterial& m) {
  if (!(m.sigma > 0.0) || !std::isfinite(m.sigma)) {
    throw ConfigError("material.sigma must be > 0");
  }
  if (m.thickness && !(*m.thickness > 0.0)) {
    throw ConfigError("material.thickness must be > 0 when given");
  }
}

struct GeometryConstants {
  double inductance;
  double t_sigma_length;   // length scale squared in t_sigma = pi ell^2 / D_M
  std::optional<double> resistance;
};

GeometryConstants geometry_constants(const Coaxial& c,
                                     const ElectrodeMaterial& m) {
  const double log_ratio = std::log(c.r_outer / c.r_inner);
  const double ell = 2.0 * c.r_outer * c.r_inner / (c.r_outer + c.r_inner) *
                     log_ratio;
  std::optional<double> r;
  if (m.thickness) {
    const double th = *m.thickness;
    r = 1.0 / (m.sigma * 2.0 * std::numbers::pi * c.r_inner * th) +
        1.0 / (m.sigma * 2.0 * std::numbers::pi * c.r_outer * th);
  }
  return {kMu0 / (2.0 * std::numbers::pi) * log_ratio, ell, r};
}

GeometryConstants geometry_constants(const Stripline& s,
                                     const ElectrodeMaterial& m) {
  std::optional<double> r;
  if (m.thickness) r = 2.0 / (m.sigma * *m.thickness);
  return {kMu0 * s.gap, s.gap, r};
}

}  // namespace

void validate(const LineSpec& spec) {
  validate_material(spec.material);
  std::visit(
      [](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Coaxial>) {
          if (!(g.r_inner > 0.0)) {
            throw ConfigError("coaxial: r_inner must be > 0");
          }
          if (g.r_outer == g.r_inner) {
            throw ConfigError(
                "coaxial: r_outer == r_inner gives zero inductance "
                "(degenerate geometry)");
          }
          if (!(g.r_outer > g.r_inner)) {
            throw ConfigError("coaxial: requires r_outer > r_inner");
          }
        } else {
          if (!(g.gap > 0.0)) throw ConfigError("stripline: gap must be > 0");
        }
      },
      spec.geometry);
  if (spec.resistance_override && !(*spec.resistance_override > 0.0)) {
    throw ConfigError("resistance_override must be > 0 when given");
  }
}

double magnetic_diffusion(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  return 1.0 / (kMu0 * sigma);
}

TimeConstants derive_constants(const LineSpec& spec) {
  validate(spec);
  const auto g = std::visit(
      [&](const auto& geo) { return geometry_constants(geo, spec.material); },
      spec.geometry);

  TimeConstants tc;
  tc.inductance = g.inductance;
  tc.diffusion = magnetic_diffusion(spec.material.sigma);
  tc.t_sigma = std::numbers::pi * g.t_sigma_length * g.t_sigma_length /
               tc.diffusion;
  tc.resistance = spec.resistance_override ? spec.resistance_override
                                           : g.resistance;
  if (tc.resistance) tc.t_R = tc.inductance / *tc.resistance;
  return tc;
}

double require_t_R(const TimeConstants& tc) {
  if (!tc.t_R) {
    throw ConfigError(
        "t_R needs a per-length resistance: give material.thickness or "
        "resistance_override");
  }
  return *tc.t_R;
}

double diffusion_depth(double t, double sigma) {
  if (t < 0.0) throw ConfigError("time must be >= 0");
  return 2.0 * std::sqrt(magnetic_diffusion(sigma) * t);
}

SkinRegime skin_regime(double t, const ElectrodeMaterial& material) {
  if (!material.thickness) return SkinRegime::StrongSkin;
  const double depth = diffusion_depth(t, material.sigma);
  const double th = *material.thickness;
  if (th > kRegimeHigh * depth) return SkinRegime::StrongSkin;
  if (th < kRegimeLow * depth) return SkinRegime::Resistive;
  return SkinRegime::Indeterminate;
}

const char* to_string(SkinRegime regime) {
  switch (regime) {
    case SkinRegime::StrongSkin:
      return "strong-skin";
    case SkinRegime::Resistive:
      return "resistive";
    case SkinRegime::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

}  // namespace pulseloss
