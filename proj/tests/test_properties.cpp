#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pulseloss/abel_ops.hpp"
#include "pulseloss/analysis.hpp"
#include "pulseloss/closed_form.hpp"
#include "pulseloss/units_params.hpp"

using namespace pulseloss;

namespace {
constexpr int kCases = 25;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}
}  // namespace

TEST_CASE("responses to monotone pulses rise monotonically and stay below V") {
  std::mt19937_64 rng(20261015);
  for (int c = 0; c < kCases; ++c) {
    const double v = log_uniform(rng, 1e-3, 1e3);
    const double t_sigma = log_uniform(rng, 1e-9, 1e-2);
    const double t0 = t_sigma * log_uniform(rng, 1e-3, 2.0);
    const Waveform w = Trapezoid{v, t0};
    CAPTURE(v);
    CAPTURE(t_sigma);
    CAPTURE(t0);
    const auto grid = TimeGrid::for_waveform(w, 256, 3.0 * t_sigma);
    const auto u = solve_second_kind(w, t_sigma, grid).curve.values;
    const auto r = exponential_convolution(w, t_sigma, grid.points()).values;
    for (std::size_t i = 1; i < u.size(); ++i) {
      CHECK(u[i] >= u[i - 1] - 1e-9 * v);
      CHECK(r[i] >= r[i - 1] - 1e-12 * v);
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(u[i] >= -1e-9 * v);
      CHECK(u[i] <= v);
      CHECK(r[i] <= v);
    }
  }
}

TEST_CASE("solutions depend on t/t_sigma and scale with V") {
  std::mt19937_64 rng(7);
  const auto unit_grid = TimeGrid::uniform_with_knot(256, 2.0, 0.05);
  const auto unit = solve_second_kind(Trapezoid{1.0, 0.05}, 1.0, unit_grid).curve.values;
  for (int c = 0; c < kCases; ++c) {
    const double v = log_uniform(rng, 1e-2, 1e2);
    const double t_sigma = log_uniform(rng, 1e-9, 1.0);
    const auto grid = TimeGrid::uniform_with_knot(256, 2.0 * t_sigma, 0.05 * t_sigma);
    REQUIRE(grid.size() == unit_grid.size());
    const auto u = solve_second_kind(Trapezoid{v, 0.05 * t_sigma}, t_sigma, grid).curve.values;
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(u[i] == doctest::Approx(v * unit[i]).epsilon(1e-9).scale(v));
    }
  }
}

TEST_CASE("t_delta grows with delta and with the rise time") {
  std::mt19937_64 rng(99);
  for (int c = 0; c < kCases; ++c) {
    const RegimeModel m = (c % 2) ? RegimeModel{Resistive{log_uniform(rng, 1e-9, 1.0)}}
                                  : RegimeModel{StrongSkin{log_uniform(rng, 1e-9, 1.0)}};
    const double tc = std::visit([](auto x) {
      if constexpr (std::is_same_v<decltype(x), StrongSkin>) return x.t_sigma;
      else return x.t_R;
    }, m);
    const double t0 = tc * log_uniform(rng, 1e-3, 1.0);
    const double d1 = std::uniform_real_distribution<double>(0.02, 0.3)(rng);
    const double d2 = d1 + 0.05;
    TDeltaQuery q;
    q.model = m;
    q.waveform = Trapezoid{1.0, t0};
    q.delta = d1;
    const double a = find_t_delta(q);
    q.delta = d2;
    const double b = find_t_delta(q);
    q.waveform = Trapezoid{1.0, 2.0 * t0};
    const double slower = find_t_delta(q);
    CHECK(a < b);
    CHECK(b < slower);
  }
}

TEST_CASE("semigroup identity on random cubics") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> coef(0.0, 1.0);
  const auto grid = TimeGrid::uniform(512, 1.0);
  const HalfIntegralRule rule(grid.points());
  const auto t = grid.points();
  for (int c = 0; c < kCases; ++c) {
    const double a[] = {coef(rng), coef(rng), coef(rng), coef(rng)};
    std::vector<double> f(t.size()), exact(t.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double s = t[i];
      f[i] = a[0] + a[1] * s + a[2] * s * s + a[3] * s * s * s;
      exact[i] = std::numbers::pi *
                 (a[0] * s + a[1] * s * s / 2 + a[2] * s * s * s / 3 + a[3] * s * s * s * s / 4);
      scale = std::max(scale, std::abs(exact[i]));
    }
    const auto aaf = rule.apply(rule.apply(f));
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(std::abs(aaf[i] - exact[i]) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("regime moves from skin to resistive as time grows") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < kCases; ++c) {
    const ElectrodeMaterial m{log_uniform(rng, 1e5, 1e8), log_uniform(rng, 1e-7, 1e-3)};
    int last = -1;
    for (double t = 1e-12; t < 1e3; t *= 3.0) {
      const auto r = skin_regime(t, m);
      const int rank = r == SkinRegime::StrongSkin ? 0 : r == SkinRegime::Indeterminate ? 1 : 2;
      CHECK(rank >= last);
      last = rank;
    }
  }
}
