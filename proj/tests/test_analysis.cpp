#include <doctest.h>

#include <cmath>

#include "pulseloss/analysis.hpp"
#include "pulseloss/error.hpp"

using namespace pulseloss;

namespace {
TDeltaQuery query(double delta, Waveform w, RegimeModel m,
                  TDeltaMethod method = TDeltaMethod::ClosedForm) {
  TDeltaQuery q;
  q.delta = delta;
  q.waveform = std::move(w);
  q.model = m;
  q.method = method;
  return q;
}
}  // namespace

TEST_CASE("t_delta, closed forms") {
  CHECK(find_t_delta(query(0.1, Step{1.0}, Resistive{1.0})) ==
        doctest::Approx(0.1053605156578263).epsilon(1e-11));
  CHECK(find_t_delta(query(0.1, Trapezoid{1.0, 0.5}, Resistive{1.0})) ==
        doctest::Approx(0.3338105448306558).epsilon(1e-11));
  CHECK(find_t_delta(query(0.1, Step{1.0}, StrongSkin{1.0})) ==
        doctest::Approx(0.0029505983232404003).epsilon(1e-11));
  CHECK(find_t_delta(query(0.02, Step{1.0}, StrongSkin{1.0})) ==
        doctest::Approx(1.0322509e-4).epsilon(1e-6));
  CHECK(find_t_delta(query(0.1, Trapezoid{1.0, 0.1}, StrongSkin{1.0})) ==
        doctest::Approx(0.0445497087084091).epsilon(1e-9));
  // Amplitude drops out.
  CHECK(find_t_delta(query(0.1, Step{7.0}, StrongSkin{2.0})) ==
        doctest::Approx(2.0 * 0.0029505983232404003).epsilon(1e-11));
}

TEST_CASE("t_delta, numeric path agrees within one step") {
  const auto exact = find_t_delta(query(0.2, Trapezoid{1.0, 0.05}, StrongSkin{1.0}));
  auto q = query(0.2, Trapezoid{1.0, 0.05}, StrongSkin{1.0}, TDeltaMethod::SecondKind);
  q.grid_intervals = 2048;
  CHECK(std::abs(find_t_delta(q) - exact) < 1e-4);

  auto r = query(0.2, Step{1.0}, Resistive{1.0}, TDeltaMethod::SecondKind);
  CHECK(find_t_delta(r) == doctest::Approx(-std::log(0.8)).epsilon(1e-4));
}

TEST_CASE("t_delta errors") {
  CHECK_THROWS_AS(find_t_delta(query(0.0, Step{1.0}, Resistive{1.0})), ConfigError);
  CHECK_THROWS_AS(find_t_delta(query(1.0, Step{1.0}, Resistive{1.0})), ConfigError);
  auto q = query(0.9, Step{1.0}, StrongSkin{1.0});
  q.horizon = 1.0;
  try {
    find_t_delta(q);
    FAIL("expected UnreachableError");
  } catch (const UnreachableError& e) {
    CHECK(e.achieved() == doctest::Approx(0.71794082382431735).epsilon(1e-9));
  }
  CHECK_THROWS_AS(find_t_delta(query(0.1, Step{0.0}, StrongSkin{1.0})), UnreachableError);
  CHECK_THROWS_AS(
      find_t_delta(query(0.1, Sampled({0.0, 1.0}, {0.0, 1.0}), StrongSkin{1.0})),
      UnsupportedError);
}

TEST_CASE("sweep order and failures") {
  const double t0[] = {1.0, 0.01, 0.1};
  const double deltas[] = {0.3, 0.05, 0.99};
  const auto cells = sweep_t_delta(t0, deltas, StrongSkin{1.0});
  REQUIRE(cells.size() == 9);
  CHECK(cells[0].t0 == 0.01);
  CHECK(cells[0].delta == 0.05);
  CHECK(cells[1].delta == 0.3);
  CHECK(cells[8].t0 == 1.0);
  for (const auto& c : cells) {
    CAPTURE(c.t0);
    CAPTURE(c.delta);
    CHECK(c.t_delta.has_value() == (c.delta < 0.9));
    CHECK(c.error.empty() == c.t_delta.has_value());
  }
  // Longer rise times reach each level later.
  CHECK(*cells[0].t_delta < *cells[3].t_delta);
  CHECK(*cells[3].t_delta < *cells[6].t_delta);
}

TEST_CASE("figure 1 data") {
  const double ratios[] = {1e-3, 1e-2, 1e-1, 1.0};
  const auto rows = figure1_data(ratios, 256, 2.0);
  CHECK(rows.front().t0_over_tsigma == 1e-3);
  CHECK(rows.back().t0_over_tsigma == 1.0);
  CHECK(rows.back().t_over_tsigma == 2.0);
  for (const auto& r : rows) {
    CHECK(std::abs(r.usigma_resolvent - r.usigma_numeric) < 5e-3);
  }
  const double three[] = {0.1, 0.2, 0.3};
  CHECK_THROWS_AS(figure1_data(three, 256, 2.0), ConfigError);
}

TEST_CASE("method comparison") {
  const auto grid = TimeGrid::uniform(1024, 1.0);
  const auto skin = compare_methods(Step{1.0}, StrongSkin{1.0}, grid);
  CHECK(skin.pairs.size() == 3);
  for (const auto& p : skin.pairs) CHECK(p.max_abs < 1e-4);
  // The factor 4 is the small-time limit.
  const auto early = compare_methods(Step{1.0}, StrongSkin{1.0}, TimeGrid::uniform(1024, 1e-3));
  REQUIRE(early.ratio_track.size() > 0);
  CHECK(early.ratio_track.values.front() == doctest::Approx(4.0).epsilon(0.01));

  const Waveform trap = Trapezoid{1.0, 0.2};
  const auto res = compare_methods(trap, Resistive{1.0}, TimeGrid::for_waveform(trap, 1024, 1.0));
  REQUIRE(res.pairs.size() == 1);
  CHECK(res.pairs[0].max_abs < 1e-12);

  const auto zero = compare_methods(Step{0.0}, Resistive{1.0}, grid);
  for (double v : zero.ratio_track.values) CHECK(v == 0.0);
}
