#include "pulseloss/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pulseloss/error.hpp"

namespace pulseloss {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys,
                   double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double s = (x - x0) / (x1 - x0);
  return ys[i - 1] + s * (ys[i] - ys[i - 1]);
}

void check_time(double t) {
  if (!(t >= 0.0)) throw ConfigError("waveform evaluated at negative time");
}

}  // namespace

Sampled::Sampled(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw ConfigError("sampled waveform: times and values differ in length");
  }
  if (times_.size() < 2) {
    throw ConfigError("sampled waveform: need at least two samples");
  }
  if (times_.front() != 0.0) {
    throw ConfigError("sampled waveform: first time must be 0");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw ConfigError("sampled waveform: times must strictly increase");
    }
  }
  if (values_.front() != 0.0) {
    throw ConfigError("sampled waveform: value at t = 0 must be 0");
  }
}

double Sampled::eval(double t) const { return interpolate(times_, values_, t); }

void validate(const Waveform& w) {
  std::visit(overloaded{
                 [](const Step& s) {
                   if (!(s.amplitude >= 0.0)) {
                     throw ConfigError("step amplitude must be >= 0");
                   }
                 },
                 [](const Trapezoid& tr) {
                   if (!(tr.amplitude >= 0.0)) {
                     throw ConfigError("trapezoid amplitude must be >= 0");
                   }
                   if (!(tr.rise_time > 0.0)) {
                     throw ConfigError("trapezoid rise_time must be > 0");
                   }
                 },
                 [](const Sampled&) {},
             },
             w);
}

double eval(const Waveform& w, double t) {
  check_time(t);
  return std::visit(
      overloaded{
          [t](const Step& s) { return t > 0.0 ? s.amplitude : 0.0; },
          [t](const Trapezoid& tr) {
            return t < tr.rise_time ? tr.amplitude * t / tr.rise_time
                                    : tr.amplitude;
          },
          [t](const Sampled& s) { return s.eval(t); },
      },
      w);
}

double eval_right(const Waveform& w, double t) {
  if (const auto* s = std::get_if<Step>(&w)) {
    check_time(t);
    return s->amplitude;
  }
  return eval(w, t);
}

double amplitude(const Waveform& w) {
  return std::visit(
      overloaded{
          [](const Step& s) { return s.amplitude; },
          [](const Trapezoid& tr) { return tr.amplitude; },
          [](const Sampled& s) {
            const auto v = s.values();
            return *std::max_element(v.begin(), v.end());
          },
      },
      w);
}

bool is_builtin(const Waveform& w) { return !std::holds_alternative<Sampled>(w); }

std::optional<double> knot_of(const Waveform& w) {
  if (const auto* tr = std::get_if<Trapezoid>(&w)) return tr->rise_time;
  return std::nullopt;
}

double half_integral_exact(const Waveform& w, double t) {
  check_time(t);
  return std::visit(
      overloaded{
          [t](const Step& s) { return 2.0 * s.amplitude * std::sqrt(t); },
          [t](const Trapezoid& tr) {
            const double t0 = tr.rise_time;
            double kink = 0.0;
            if (t > t0) kink = (t - t0) * std::sqrt(t - t0);
            return tr.amplitude / t0 * (4.0 / 3.0) * (t * std::sqrt(t) - kink);
          },
          [](const Sampled&) -> double {
            throw UnsupportedError(
                "exact half-integral is only available for step and "
                "trapezoid pulses; use the numeric half_integral");
          },
      },
      w);
}

std::optional<MonotoneViolation> validate_monotone(const Waveform& w) {
  const auto* s = std::get_if<Sampled>(&w);
  if (!s) return std::nullopt;
  const auto v = s->values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) return MonotoneViolation{i, v[i - 1], v[i]};
  }
  return std::nullopt;
}

void require_monotone(const Waveform& w) {
  validate(w);
  if (const auto bad = validate_monotone(w)) {
    std::ostringstream os;
    os << "input pulse must be non-decreasing; value drops at index "
       << bad->index << " (" << bad->previous << " -> " << bad->value << ")";
    throw ConfigError(os.str());
  }
}

std::string describe(const Waveform& w) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Step& s) { os << "step V=" << s.amplitude; },
                 [&](const Trapezoid& tr) {
                   os << "trapezoid V=" << tr.amplitude
                      << " t0=" << tr.rise_time;
                 },
                 [&](const Sampled& s) {
                   os << "sampled points=" << s.times().size();
                 },
             },
             w);
  return os.str();
}

const char* to_string(CurveLabel label) {
  switch (label) {
    case CurveLabel::USigma:
      return "U_sigma";
    case CurveLabel::F:
      return "F";
    case CurveLabel::Phi:
      return "Phi";
    case CurveLabel::Delta:
      return "Delta";
    case CurveLabel::U0:
      return "U0";
    case CurveLabel::Generic:
      return "curve";
  }
  return "?";
}

SampledCurve::SampledCurve(std::vector<double> t, std::vector<double> v,
                           CurveLabel l)
    : times(std::move(t)), values(std::move(v)), label(l) {
  if (times.size() != values.size()) {
    throw ConfigError("curve: times and values differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ConfigError("curve: times must strictly increase");
    }
  }
}

double SampledCurve::at(double t) const {
  if (times.empty()) throw ConfigError("curve: empty");
  return interpolate(times, values, t);
}

}  // namespace pulseloss
