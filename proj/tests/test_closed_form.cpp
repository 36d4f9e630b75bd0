#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pulseloss/closed_form.hpp"
#include "pulseloss/error.hpp"

using namespace pulseloss;

TEST_CASE("erfcx against 30-digit values") {
  struct P { double x, v; };
  for (auto [x, v] : {P{1e-6, 0.9999988716218329}, P{0.1, 0.89645697996912664},
                      P{0.5, 0.61569034419292587}, P{1.0, 0.427583576155807},
                      P{2.0, 0.25539567631050574}, P{5.0, 0.11070463773306863},
                      P{10.0, 0.056140992743822586}, P{26.5, 0.021275046685371106},
                      P{30.0, 0.018795888861416751}}) {
    CAPTURE(x);
    CHECK(std::abs(erfcx(x) - v) <= 1e-14 * v);
  }
  CHECK(erfcx(0.0) == 1.0);
  CHECK_THROWS_AS(erfcx(-0.5), DomainError);
}

TEST_CASE("step response, skin regime") {
  CHECK(usigma_step_skin(0.0, 1.0, 1.0) == 0.0);
  CHECK(usigma_step_skin(1.0 / std::numbers::pi, 1.0, 1.0) ==
        doctest::Approx(0.5724164238441930).epsilon(1e-12));
  CHECK(usigma_step_skin(1e-4, 1.0, 1.0) ==
        doctest::Approx(0.01968998069808184).epsilon(1e-10));
  CHECK(usigma_step_skin(1.0, 1.0, 2.0) ==
        doctest::Approx(2.0 * 0.71794082382431735).epsilon(1e-12));
  // Scales with t/t_sigma only.
  CHECK(usigma_step_skin(3e-6, 1e-6, 1.0) ==
        doctest::Approx(usigma_step_skin(3.0, 1.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("F for a trapezoid matches quadrature") {
  const Waveform w = Trapezoid{1.0, 0.01};
  CHECK(f_closed(w, 1.0, 0.005) == doctest::Approx(0.043213461262115927).epsilon(1e-12));
  CHECK(f_closed(w, 1.0, 0.01) == doctest::Approx(0.11762537006538437).epsilon(1e-12));
  CHECK(f_closed(w, 1.0, 0.5) == doctest::Approx(-0.14796961775711269).epsilon(1e-12));
  CHECK_THROWS_AS(f_closed(Sampled({0.0, 1.0}, {0.0, 1.0}), 1.0, 0.5), UnsupportedError);
}

TEST_CASE("resistive responses") {
  CHECK(usigma_resistive(Step{1.0}, 1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  const Waveform w = Trapezoid{1.0, 0.3};
  CHECK(usigma_resistive(w, 1.0, 0.1) == doctest::Approx(0.016124726786531911).epsilon(1e-12));
  CHECK(usigma_resistive(w, 1.0, 0.3) == doctest::Approx(0.13606073560572622).epsilon(1e-12));
  CHECK(usigma_resistive(w, 1.0, 1.0) == doctest::Approx(0.57098045793344269).epsilon(1e-12));
  CHECK(usigma_resistive(w, 1.0, 3.0) == doctest::Approx(0.94193851876038059).epsilon(1e-12));
  CHECK(usigma_resistive(Trapezoid{1.0, 1.0}, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // A sampled copy of the same trapezoid is convolved exactly.
  const Waveform s = Sampled({0.0, 0.3, 5.0}, {0.0, 1.0, 1.0});
  CHECK(usigma_resistive(s, 1.0, 1.0) == doctest::Approx(0.57098045793344269).epsilon(1e-12));
}

TEST_CASE("front attenuation") {
  CHECK(delta_front(1.0, Resistive{1.0}) == doctest::Approx(1.0 - std::exp(-0.5)));
  CHECK(delta_front(0.04, StrongSkin{1.0}) == doctest::Approx(0.1));
  CHECK_THROWS_AS(delta_front(0.2, StrongSkin{1.0}), DomainError);
  CHECK_THROWS_AS(validate(RegimeModel{StrongSkin{0.0}}), ConfigError);
}

TEST_CASE("exponential convolution on a grid") {
  const Waveform w = Trapezoid{2.0, 0.3};
  std::vector<double> t;
  for (int i = 0; i <= 40; ++i) t.push_back(0.1 * i);
  const auto c = exponential_convolution(w, 1.0, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(c.values[i] == doctest::Approx(usigma_resistive(w, 1.0, t[i])).epsilon(1e-10));
  }
  const auto z = exponential_convolution(Step{0.0}, 1.0, t);
  for (double v : z.values) CHECK(v == 0.0);
}
