#include "pulseloss/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

constexpr double kPi = std::numbers::pi;

// Coefficients from W. J. Cody, "Rational Chebyshev approximations for the
// error function", Math. Comp. 23 (1969).
constexpr std::array<double, 5> kErfA = {
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1};
constexpr std::array<double, 4> kErfB = {
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
    2.84423683343917062e03};
constexpr std::array<double, 9> kErfcC = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kErfcD = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kErfcP = {
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kErfcQ = {
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;

// 1 - exp(-x)(1 + x) = int_0^x s e^{-s} ds, accurate for small x.
double first_moment(double x) {
  if (x < 0.1) {
    double term = x * x;  // x^{m+2}/m!
    double sum = 0.0;
    for (int m = 0; m < 12; ++m) {
      sum += (m % 2 == 0 ? 1.0 : -1.0) * term / (m + 2);
      term *= x / (m + 1);
    }
    return sum;
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

// Contribution of one linear piece (f_left at a, f_right at b) to the
// exponential convolution evaluated at b.
double exp_piece(double f_left, double f_right, double width, double t_R) {
  const double x = width / t_R;
  const double e0 = -std::expm1(-x);
  const double e1_over_x = first_moment(x) / x;
  return f_left * e1_over_x + f_right * (e0 - e1_over_x);
}

}  // namespace

void validate(const RegimeModel& model) {
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, StrongSkin>) {
          if (!(m.t_sigma > 0.0)) throw ConfigError("t_sigma must be > 0");
        } else {
          if (!(m.t_R > 0.0)) throw ConfigError("t_R must be > 0");
        }
      },
      model);
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) throw DomainError("erfcx: argument must be >= 0");

  if (x <= 0.46875) {
    const double ysq = x > 1.11e-16 ? x * x : 0.0;
    double num = kErfA[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + kErfA[i]) * ysq;
      den = (den + kErfB[i]) * ysq;
    }
    const double erf = x * (num + kErfA[3]) / (den + kErfB[3]);
    return std::exp(ysq) * (1.0 - erf);
  }
  if (x <= 4.0) {
    double num = kErfcC[8] * x;
    double den = x;
    for (int i = 0; i < 7; ++i) {
      num = (num + kErfcC[i]) * x;
      den = (den + kErfcD[i]) * x;
    }
    return (num + kErfcC[7]) / (den + kErfcD[7]);
  }
  if (x >= 6.71e7) return kInvSqrtPi / x;
  const double ysq = 1.0 / (x * x);
  double num = kErfcP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfcP[i]) * ysq;
    den = (den + kErfcQ[i]) * ysq;
  }
  const double r = ysq * (num + kErfcP[4]) / (den + kErfcQ[4]);
  return (kInvSqrtPi - r) / x;
}

double f_closed(const Waveform& w, double t_sigma, double t) {
  if (!(t_sigma > 0.0)) throw ConfigError("t_sigma must be > 0");
  if (!(t >= 0.0)) throw ConfigError("F evaluated at negative time");
  if (const auto* s = std::get_if<Step>(&w)) {
    const double r = t / t_sigma;
    return s->amplitude * (2.0 * std::sqrt(r) - kPi * r);
  }
  if (const auto* tr = std::get_if<Trapezoid>(&w)) {
    const double t0 = tr->rise_time;
    double p32 = t * std::sqrt(t);
    double p2 = t * t;
    if (t > t0) {
      const double d = t - t0;
      p32 -= d * std::sqrt(d);
      p2 -= d * d;
    }
    return tr->amplitude / t0 *
           (4.0 / (3.0 * std::sqrt(t_sigma)) * p32 - kPi / (2.0 * t_sigma) * p2);
  }
  throw UnsupportedError(
      "closed-form F exists only for step and trapezoid pulses");
}

double usigma_step_skin(double t, double t_sigma, double amplitude) {
  if (!(t_sigma > 0.0)) throw ConfigError("t_sigma must be > 0");
  if (!(t >= 0.0)) throw ConfigError("U_sigma evaluated at negative time");
  return amplitude * (1.0 - erfcx(std::sqrt(kPi * t / t_sigma)));
}

double usigma_resistive(const Waveform& w, double t_R, double t) {
  if (!(t_R > 0.0)) throw ConfigError("t_R must be > 0");
  if (!(t >= 0.0)) throw ConfigError("U_sigma evaluated at negative time");
  if (const auto* s = std::get_if<Step>(&w)) {
    return -s->amplitude * std::expm1(-t / t_R);
  }
  if (const auto* tr = std::get_if<Trapezoid>(&w)) {
    const double t0 = tr->rise_time;
    const double v = tr->amplitude;
    if (t <= t0) {
      return v / t0 * (t + t_R * std::expm1(-t / t_R));
    }
    // (t_R/t0)(e^{t0/t_R} - 1) e^{-t/t_R}
    const double growth = std::expm1(t0 / t_R) / (t0 / t_R);
    return v * (1.0 - growth * std::exp(-t / t_R));
  }
  const auto& s = std::get<Sampled>(w);
  const auto ts = s.times();
  const auto vs = s.values();
  double acc = 0.0;  // convolution evaluated at the end of the last piece
  double end = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size() && ts[k] < t; ++k) {
    const double b = std::min(ts[k + 1], t);
    const double fb = s.eval(b);
    acc = acc * std::exp(-(b - ts[k]) / t_R) +
          exp_piece(vs[k], fb, b - ts[k], t_R);
    end = b;
  }
  if (t > end) {
    // Held at the last sample past the table.
    const double hold = vs.back();
    acc = acc * std::exp(-(t - end) / t_R) - hold * std::expm1(-(t - end) / t_R);
  }
  return acc;
}

double delta_front(double t, const RegimeModel& model) {
  validate(model);
  if (!(t >= 0.0)) throw ConfigError("Delta evaluated at negative time");
  if (const auto* r = std::get_if<Resistive>(&model)) {
    return -std::expm1(-t / (2.0 * r->t_R));
  }
  const double t_sigma = std::get<StrongSkin>(model).t_sigma;
  if (t > kSkinFrontValidity * t_sigma) {
    throw DomainError(
        "front attenuation in the strong-skin regime is only known for "
        "t <= 0.1 t_sigma");
  }
  return 0.5 * std::sqrt(t / t_sigma);
}

SampledCurve exponential_convolution(const Waveform& w, double t_R,
                                     std::span<const double> times) {
  if (!(t_R > 0.0)) throw ConfigError("t_R must be > 0");
  if (times.empty() || times.front() != 0.0) {
    throw ConfigError("convolution grid must start at t = 0");
  }
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t n = 1; n < times.size(); ++n) {
    const double a = times[n - 1], b = times[n];
    out[n] = out[n - 1] * std::exp(-(b - a) / t_R) +
             exp_piece(eval_right(w, a), eval(w, b), b - a, t_R);
  }
  return SampledCurve({times.begin(), times.end()}, std::move(out),
                      CurveLabel::USigma);
}

}  // namespace pulseloss
