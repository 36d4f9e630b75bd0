#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pulseloss/abel_ops.hpp"
#include "pulseloss/closed_form.hpp"
#include "pulseloss/error.hpp"

using namespace pulseloss;
using std::numbers::pi;

namespace {
double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("half integral of powers") {
  const auto grid = TimeGrid::uniform(256, 2.0);
  const HalfIntegralRule rule(grid.points());
  std::vector<double> one(grid.size(), 1.0), half(grid.size()), exact1(grid.size()),
      exact_half(grid.size());
  const auto t = grid.points();
  for (std::size_t i = 0; i < t.size(); ++i) {
    half[i] = std::sqrt(t[i]);
    exact1[i] = 2.0 * std::sqrt(t[i]);
    exact_half[i] = pi * t[i] / 2.0;
  }
  CHECK(max_abs_diff(rule.apply(one), exact1) < 1e-13);
  CHECK(max_abs_diff(rule.apply(half), exact_half) < 1e-13);

  // Without the starting correction sqrt(t) is only first-order accurate.
  const HalfIntegralRule plain(grid.points(), false);
  CHECK(max_abs_diff(plain.apply(half), exact_half) > 1e-4);
}

TEST_CASE("non-uniform grid") {
  std::vector<double> p{0.0};
  for (int i = 1; i <= 200; ++i) p.push_back(std::pow(i / 200.0, 2.0));
  const HalfIntegralRule rule(p);
  std::vector<double> f(p.size()), exact(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    f[i] = p[i];
    exact[i] = 4.0 / 3.0 * std::pow(p[i], 1.5);
  }
  CHECK(max_abs_diff(rule.apply(f), exact) < 1e-12);
}

TEST_CASE("second kind solver, step") {
  const auto grid = TimeGrid::uniform(1024, 3.0);
  const auto rep = solve_second_kind(Step{1.0}, 1.0, grid);
  CHECK(rep.method == SolveMethod::SecondKind);
  CHECK(rep.max_step_residual < 1e-12);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    err = std::max(err, std::abs(rep.curve.values[i] -
                                 usigma_step_skin(grid.points()[i], 1.0, 1.0)));
  }
  CHECK(err < 1e-5);
}

TEST_CASE("second kind solver, zero amplitude") {
  const auto rep = solve_second_kind(Step{0.0}, 1.0, TimeGrid::uniform(64, 1.0));
  for (double v : rep.curve.values) CHECK(v == 0.0);
}

TEST_CASE("second kind solver, sampled trapezoid agrees with built-in") {
  const Waveform built = Trapezoid{1.0, 0.1};
  const Waveform sampled = Sampled({0.0, 0.1, 10.0}, {0.0, 1.0, 1.0});
  const auto grid = TimeGrid::for_waveform(built, 2048, 2.0);
  const auto a = solve_second_kind(built, 1.0, grid);
  const auto b = solve_second_kind(sampled, 1.0, grid);
  CHECK(max_abs_diff(a.curve.values, b.curve.values) < 1e-5);
}

TEST_CASE("resolvent paths") {
  const auto grid = TimeGrid::uniform(512, 5.0);
  const auto rep = resolvent_solution(Step{1.0}, 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); i += 64) {
    CHECK(rep.curve.values[i] ==
          doctest::Approx(usigma_step_skin(grid.points()[i], 1.0, 1.0)).epsilon(1e-6));
  }
  CHECK(resolvent_at(Trapezoid{1.0, 0.1}, 1.0, 1.0) ==
        doctest::Approx(0.711996085618511).epsilon(1e-9));
  CHECK(resolvent_at(Trapezoid{1.0, 0.1}, 1.0, 0.05) ==
        doctest::Approx(0.117463659066685).epsilon(1e-9));
  CHECK_THROWS_AS(resolvent_solution(Step{1.0}, 1.0, TimeGrid::uniform(64, 6.0)), DomainError);
  CHECK_THROWS_AS(resolvent_solution(Sampled({0.0, 1.0}, {0.0, 1.0}), 1.0,
                                     TimeGrid::uniform(64, 1.0)),
                  UnsupportedError);
}

TEST_CASE("resolvent from a sampled F on a short window") {
  const auto grid = TimeGrid::uniform(4096, 0.5);
  const auto f = compute_F(Step{1.0}, 1.0, grid);
  const auto rep = resolvent_solution(f, 1.0);
  CHECK(rep.correction);
  CHECK(rep.curve.values.back() ==
        doctest::Approx(usigma_step_skin(0.5, 1.0, 1.0)).epsilon(1e-3));
}

TEST_CASE("abel inversion") {
  const auto grid = TimeGrid::uniform(512, 1.0);
  std::vector<double> t(grid.points().begin(), grid.points().end()), phi(t.size());
  // Phi = A[1] = 2 sqrt(t) inverts to 1.
  for (std::size_t i = 0; i < t.size(); ++i) phi[i] = 2.0 * std::sqrt(t[i]);
  const auto u = abel_invert(SampledCurve(t, phi));
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(u.values[i] == doctest::Approx(1.0).epsilon(1e-6));

  std::vector<double> shifted(phi);
  for (double& v : shifted) v += 0.1;
  CHECK_THROWS_AS(abel_invert(SampledCurve(t, shifted)), ConfigError);
}
