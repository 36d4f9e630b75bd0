#include <doctest.h>

#include <cmath>

#include "pulseloss/error.hpp"
#include "pulseloss/units_params.hpp"

using namespace pulseloss;

namespace {
LineSpec coax(double re, double ri, std::optional<double> th = std::nullopt) {
  return {Coaxial{re, ri}, ElectrodeMaterial{5.8e7, th}, std::nullopt};
}
}  // namespace

TEST_CASE("coax constants") {
  const auto tc = derive_constants(coax(5e-3, 1e-3, 10e-6));
  CHECK(tc.inductance == doctest::Approx(3.2188758248682006e-07).epsilon(1e-12));
  CHECK(tc.diffusion == doctest::Approx(0.013720253714818564).epsilon(1e-12));
  CHECK(tc.t_sigma == doctest::Approx(0.0016475313393406168).epsilon(1e-12));
  REQUIRE(tc.resistance);
  CHECK(*tc.resistance == doctest::Approx(0.3292860891556455).epsilon(1e-12));
  CHECK(*tc.t_R == doctest::Approx(9.775316756082935e-07).epsilon(1e-12));
}

TEST_CASE("stripline constants") {
  const LineSpec s{Stripline{1e-3}, ElectrodeMaterial{5.8e7, 10e-6}, std::nullopt};
  const auto tc = derive_constants(s);
  CHECK(tc.inductance == doctest::Approx(1.2566370614359174e-09).epsilon(1e-12));
  CHECK(tc.t_sigma == doctest::Approx(0.00022897482210527313).epsilon(1e-12));
  CHECK(*tc.t_R == doctest::Approx(3.6442474781641603e-07).epsilon(1e-12));
}

TEST_CASE("t_R needs a resistance") {
  const auto tc = derive_constants(coax(5e-3, 1e-3));
  CHECK_FALSE(tc.t_R);
  CHECK_THROWS_AS(require_t_R(tc), ConfigError);

  auto spec = coax(5e-3, 1e-3);
  spec.resistance_override = 0.5;
  const auto with_r = derive_constants(spec);
  CHECK(require_t_R(with_r) == doctest::Approx(with_r.inductance / 0.5));
}

TEST_CASE("invalid lines") {
  CHECK_THROWS_AS(validate(coax(1e-3, 5e-3)), ConfigError);
  CHECK_THROWS_WITH_AS(validate(coax(1e-3, 1e-3)),
                       doctest::Contains("degenerate"), ConfigError);
  CHECK_THROWS_AS(validate(coax(5e-3, 0.0)), ConfigError);
  CHECK_THROWS_AS(validate(coax(5e-3, 1e-3, -1.0)), ConfigError);
  LineSpec bad_sigma{Stripline{1e-3}, ElectrodeMaterial{0.0, {}}, {}};
  CHECK_THROWS_AS(validate(bad_sigma), ConfigError);
  LineSpec bad_gap{Stripline{0.0}, ElectrodeMaterial{1.0, {}}, {}};
  CHECK_THROWS_AS(validate(bad_gap), ConfigError);
}

TEST_CASE("regime classification") {
  const double sigma = 5.8e7;
  const double depth = diffusion_depth(1e-6, sigma);
  CHECK(depth == doctest::Approx(0.0002342669734710257).epsilon(1e-12));
  CHECK(skin_regime(1e-6, {sigma, 4.0 * depth}) == SkinRegime::StrongSkin);
  CHECK(skin_regime(1e-6, {sigma, 0.2 * depth}) == SkinRegime::Resistive);
  CHECK(skin_regime(1e-6, {sigma, depth}) == SkinRegime::Indeterminate);
  CHECK(skin_regime(1e-6, {sigma, std::nullopt}) == SkinRegime::StrongSkin);
  CHECK(std::string(to_string(SkinRegime::Indeterminate)) == "indeterminate");
}
