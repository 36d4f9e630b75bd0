#include <doctest.h>

#include <cmath>

#include "pulseloss/error.hpp"
#include "pulseloss/linesim_oracle.hpp"

using namespace pulseloss;

namespace {
FdtdConfig small(std::size_t cells) {
  FdtdConfig c;
  c.n_cells = cells;
  return c;
}
}  // namespace

TEST_CASE("lossless line") {
  FdtdConfig c = small(1000);
  c.resistance = 0.0;
  const auto p = simulate_step(c);
  REQUIRE(p.delta_curve.size() > 0);
  for (std::size_t i = 0; i < p.delta_curve.size(); ++i) {
    CHECK(std::abs(p.delta_curve.values[i]) <= 1e-10);
    CHECK(std::abs(p.sigma_curve.values[i]) <= 1e-10);
    CHECK(std::abs(p.field_energy[i] / p.injected_energy[i] - 1.0) <= 5e-3);
    CHECK(p.front_impedance.values[i] == doctest::Approx(50.0).epsilon(0.05));
  }
}

TEST_CASE("resistive line against the closed forms") {
  const auto p = simulate_step(FdtdConfig{});
  const double t_R = 5e-7;
  CHECK(p.sigma_curve.at(t_R) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.02));
  CHECK(p.delta_curve.at(t_R) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(0.03));
  const auto v = verify_against_closed_form(p, t_R);
  CHECK(v.max_dev_delta <= 0.03);
  CHECK(v.max_dev_sigma <= 0.03);
  CHECK(v.ratio >= 1.9);
  CHECK(v.ratio <= 2.1);
}

TEST_CASE("front speed") {
  const FdtdConfig c = small(2000);
  const auto p = simulate_step(c);
  REQUIRE(p.probe_arrival);
  const double expected = p.probe_position * std::sqrt(c.inductance * c.capacitance);
  CHECK(std::abs(*p.probe_arrival - expected) <= p.dz * std::sqrt(c.inductance * c.capacitance));
}

TEST_CASE("refinement shrinks the deviation") {
  double previous = 0.0;
  for (std::size_t cells : {1000u, 2000u, 4000u}) {
    const auto v = verify_against_closed_form(simulate_step(small(cells)), 5e-7);
    const double dev = std::max(v.max_dev_delta, v.max_dev_sigma);
    if (previous > 0.0) CHECK(previous / dev >= 1.5);
    previous = dev;
  }
}

TEST_CASE("configuration errors") {
  FdtdConfig c;
  c.cfl = 1.2;
  CHECK_THROWS_AS(simulate_step(c), ConfigError);
  c = FdtdConfig{};
  c.t_end = 3e-6;
  CHECK_THROWS_WITH_AS(simulate_step(c), doctest::Contains("far end"), ConfigError);
  c = FdtdConfig{};
  c.n_cells = 50;
  CHECK_THROWS_AS(simulate_step(c), ConfigError);
  CHECK_THROWS_AS(verify_against_closed_form(FdtdProbe{}, 5e-7), ConfigError);
}
