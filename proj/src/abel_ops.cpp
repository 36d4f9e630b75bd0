#include "pulseloss/abel_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pulseloss/closed_form.hpp"
#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

constexpr double kPi = std::numbers::pi;

// Weights of the two end values of the linear piece on [t_k, t_{k+1}] in
// int f(s) (t_n - s)^{-1/2} ds, with a = t_n - t_{k+1}, b = t_n - t_k.
// Rearranged so that no difference of nearly equal square roots is formed.
struct PieceWeights {
  double left;
  double right;
};

PieceWeights piece_weights(double a, double b, double h) {
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  const double den = (sa + sb) * (sa + sb);
  return {2.0 / 3.0 * h * (sb + 2.0 * sa) / den,
          2.0 / 3.0 * h * (2.0 * sb + sa) / den};
}

template <std::size_t N>
std::array<std::array<double, N>, N> invert(
    std::array<std::array<double, N>, N> m) {
  std::array<std::array<double, N>, N> inv{};
  for (std::size_t i = 0; i < N; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < N; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    }
    if (m[p][c] == 0.0) throw std::runtime_error("singular start matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const double d = m[c][c];
    for (std::size_t k = 0; k < N; ++k) {
      m[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == c) continue;
      const double f = m[r][c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < N; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Solves a small dense system in place (Gaussian elimination, partial pivot).
template <std::size_t N>
std::array<double, N> solve_small(std::array<std::array<double, N>, N> a,
                                  std::array<double, N> b) {
  const auto inv = invert(a);
  std::array<double, N> x{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) x[i] += inv[i][k] * b[k];
  }
  return x;
}

bool is_uniform(std::span<const double> p) {
  const double h = p[1] - p[0];
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (std::abs((p[i + 1] - p[i]) - h) > 1e-12 * h) return false;
  }
  return true;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct GaussLegendre {
  static constexpr std::size_t kOrder = 10;
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = [] {
    GaussLegendre g;
    constexpr std::size_t n = GaussLegendre::kOrder;
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      g.x[i] = x;
      g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
  }();
  return rule;
}

// int_a^b exp(lambda (t_ref - s)) F(s) ds. With sqrt_left the substitution
// s = a + (b - a) u^2 absorbs (s - a)^{1/2} and (s - a)^{3/2} behaviour.
template <class Fn>
double resolvent_panel(const Fn& f, double a, double b, double t_ref,
                       double lambda, bool sqrt_left) {
  const auto& g = gauss_legendre();
  double sum = 0.0;
  for (std::size_t i = 0; i < GaussLegendre::kOrder; ++i) {
    if (sqrt_left) {
      const double u = 0.5 * (g.x[i] + 1.0);
      const double s = a + (b - a) * u * u;
      sum += g.w[i] * 0.5 * 2.0 * (b - a) * u * std::exp(lambda * (t_ref - s)) *
             f(s);
    } else {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * g.x[i];
      sum += g.w[i] * 0.5 * (b - a) * std::exp(lambda * (t_ref - s)) * f(s);
    }
  }
  return sum;
}

void check_t_sigma(double t_sigma) {
  if (!(t_sigma > 0.0) || !std::isfinite(t_sigma)) {
    throw ConfigError("t_sigma must be > 0");
  }
}

void check_horizon(double t_max, double t_sigma) {
  if (t_max > kResolventHorizon * t_sigma * (1.0 + 1e-12)) {
    throw DomainError(
        "resolvent representation is limited to t <= 5 t_sigma (the "
        "exponential weight destroys accuracy); use solve_second_kind");
  }
}

void require_builtin(const Waveform& w, const char* what) {
  if (!is_builtin(w)) {
    throw UnsupportedError(std::string(what) +
                           " needs a step or trapezoid pulse");
  }
}

std::vector<double> samples(const Waveform& w, std::span<const double> t) {
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = eval_right(w, t[i]);
  return v;
}

double second_kind_residual(const HalfIntegralRule& rule,
                            std::span<const double> u,
                            std::span<const double> g, double t_sigma) {
  const auto au = rule.apply(u);
  const double sq = std::sqrt(t_sigma);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    worst = std::max(worst, std::abs(au[i] + sq * u[i] - g[i]));
  }
  const double scale = max_abs(g);
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

HalfIntegralRule::HalfIntegralRule(std::span<const double> points,
                                   bool starting_correction)
    : points_(points.begin(), points.end()), corrected_(starting_correction) {
  if (points_.size() < 2 || points_.front() != 0.0) {
    throw ConfigError("half-integral grid must start at 0 with >= 2 points");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw ConfigError("half-integral grid must be strictly increasing");
    }
  }
  if (corrected_ && points_.size() < 5) corrected_ = false;
  sqrt_points_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sqrt_points_[i] = std::sqrt(points_[i]);
  }
  if (points_.size() > 2 && is_uniform(points_)) {
    const std::size_t n = points_.size() - 1;
    const double h = points_.back() / static_cast<double>(n);
    uniform_left_.resize(n + 1);
    uniform_right_.resize(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
      const auto pw = piece_weights(static_cast<double>(m - 1) * h,
                                    static_cast<double>(m) * h, h);
      uniform_left_[m] = pw.left;
      uniform_right_[m] = pw.right;
    }
  }
  if (corrected_) {
    std::array<std::array<double, 4>, 4> m{};
    const double scale = points_[3];
    for (std::size_t k = 0; k < 4; ++k) {
      const double u = points_[k] / scale;
      m[0][k] = 1.0;
      m[1][k] = u;
      m[2][k] = std::sqrt(u);
      m[3][k] = u * std::sqrt(u);
    }
    start_inverse_ = invert(m);
  }
}

std::size_t HalfIntegralRule::row_length(std::size_t n) const {
  return corrected_ ? std::max<std::size_t>(n, 3) + 1 : n + 1;
}

void HalfIntegralRule::row(std::size_t n, std::vector<double>& out) const {
  out.assign(row_length(n), 0.0);
  const double tn = points_[n];
  if (!uniform_left_.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      out[k] += uniform_left_[n - k];
      out[k + 1] += uniform_right_[n - k];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const auto pw = piece_weights(tn - points_[k + 1], tn - points_[k],
                                    points_[k + 1] - points_[k]);
      out[k] += pw.left;
      out[k + 1] += pw.right;
    }
  }
  if (!corrected_ || n == 0) return;

  // Residuals of the linear rule on s^{1/2} and s^{3/2}; exact values are
  // B(3/2,1/2) t = pi t / 2 and B(5/2,1/2) t^2 = 3 pi t^2 / 8.
  double sum_half = 0.0, sum_three_half = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double r = sqrt_points_[j];
    sum_half += out[j] * r;
    sum_three_half += out[j] * r * points_[j];
  }
  const double scale = points_[3];
  const double r_half = (kPi / 2.0 * tn - sum_half) / std::sqrt(scale);
  const double r_three_half =
      (3.0 * kPi / 8.0 * tn * tn - sum_three_half) / (scale * std::sqrt(scale));
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] += start_inverse_[k][2] * r_half +
              start_inverse_[k][3] * r_three_half;
  }
}

std::vector<double> HalfIntegralRule::apply(std::span<const double> f) const {
  if (f.size() != points_.size()) {
    throw ConfigError("half-integral: value count does not match the grid");
  }
  std::vector<double> out(f.size(), 0.0);
  std::vector<double> w;
  for (std::size_t n = 1; n < f.size(); ++n) {
    row(n, w);
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * f[j];
    out[n] = s;
  }
  return out;
}

SampledCurve half_integral(const SampledCurve& f, bool starting_correction) {
  if (f.size() < 2 || f.times.front() != 0.0) {
    throw ConfigError("half_integral: curve must start at t = 0");
  }
  const HalfIntegralRule rule(f.times, starting_correction);
  return SampledCurve(f.times, rule.apply(f.values), CurveLabel::Generic);
}

SampledCurve abel_invert(const SampledCurve& phi, double tolerance) {
  if (phi.size() < 5 || phi.times.front() != 0.0) {
    throw ConfigError("abel_invert: need >= 5 samples starting at t = 0");
  }
  const double scale = max_abs(phi.values);
  if (std::abs(phi.values.front()) > tolerance * scale) {
    throw ConfigError("abel_invert: Phi(0) must vanish");
  }
  const HalfIntegralRule rule(phi.times);
  const auto psi = rule.apply(phi.values);
  const auto& t = phi.times;
  const std::size_t n = t.size();
  std::vector<double> u(n);
  // Three-point derivative of psi = A Phi = pi int U.
  auto d3 = [&](std::size_t i0, std::size_t at) {
    const double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2], x = t[at];
    const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    return l0 * psi[i0] + l1 * psi[i0 + 1] + l2 * psi[i0 + 2];
  };
  u[0] = d3(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) u[i] = d3(i - 1, i);
  u[n - 1] = d3(n - 3, n - 1);
  for (double& v : u) v /= kPi;
  return SampledCurve(t, std::move(u), CurveLabel::USigma);
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::SecondKind:
      return "second-kind";
    case SolveMethod::Resolvent:
      return "resolvent";
    case SolveMethod::ClosedForm:
      return "closed-form";
    case SolveMethod::Convolution:
      return "convolution";
  }
  return "?";
}

SolverReport solve_second_kind(const Waveform& u0, double t_sigma,
                               const TimeGrid& grid,
                               const SolverOptions& options) {
  check_t_sigma(t_sigma);
  require_monotone(u0);
  const auto t = grid.points();
  const std::size_t n = t.size();
  if (n - 1 < kMinGridIntervals) {
    throw ConfigError("grid too coarse: need at least 16 intervals");
  }
  const HalfIntegralRule rule(t, options.starting_correction);

  std::vector<double> g(n);
  if (is_builtin(u0)) {
    for (std::size_t i = 0; i < n; ++i) g[i] = half_integral_exact(u0, t[i]);
  } else {
    g = rule.apply(samples(u0, t));
  }

  const double sq = std::sqrt(t_sigma);
  std::vector<double> u(n, 0.0);
  u[0] = g[0] / sq;
  std::vector<double> w;
  std::size_t first_explicit = 1;
  if (rule.corrected()) {
    // Rows 1..3 share the starting weights on points 1..3: solve jointly.
    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> rhs{};
    for (std::size_t r = 1; r <= 3; ++r) {
      rule.row(r, w);
      for (std::size_t k = 1; k <= 3; ++k) {
        a[r - 1][k - 1] = w[k] + (k == r ? sq : 0.0);
      }
      rhs[r - 1] = g[r] - w[0] * u[0];
    }
    const auto x = solve_small(a, rhs);
    for (std::size_t k = 1; k <= 3; ++k) u[k] = x[k - 1];
    first_explicit = 4;
  }
  for (std::size_t i = first_explicit; i < n; ++i) {
    rule.row(i, w);
    double s = 0.0;
    for (std::size_t j = 0; j < i; ++j) s += w[j] * u[j];
    u[i] = (g[i] - s) / (w[i] + sq);
  }

  SolverReport report;
  report.max_step_residual = second_kind_residual(rule, u, g, t_sigma);
  report.curve = SampledCurve({t.begin(), t.end()}, std::move(u),
                              CurveLabel::USigma);
  report.method = SolveMethod::SecondKind;
  report.grid = grid.describe();
  return report;
}

SampledCurve compute_F(const Waveform& u0, double t_sigma,
                       const TimeGrid& grid) {
  check_t_sigma(t_sigma);
  require_monotone(u0);
  const auto t = grid.points();
  std::vector<double> f(t.size());
  if (is_builtin(u0)) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      f[i] = f_closed(u0, t_sigma, t[i]);
    }
  } else {
    const HalfIntegralRule rule(t);
    const auto a1 = rule.apply(samples(u0, t));
    const auto a2 = rule.apply(a1);
    const double sq = std::sqrt(t_sigma);
    for (std::size_t i = 0; i < t.size(); ++i) {
      f[i] = a1[i] / sq - a2[i] / t_sigma;
    }
  }
  return SampledCurve({t.begin(), t.end()}, std::move(f), CurveLabel::F);
}

SolverReport resolvent_solution(const SampledCurve& F, double t_sigma) {
  check_t_sigma(t_sigma);
  if (F.size() < 2 || F.times.front() != 0.0) {
    throw ConfigError("resolvent: F must be sampled from t = 0");
  }
  const double scale = max_abs(F.values);
  if (std::abs(F.values.front()) > 1e-9 * scale) {
    throw ConfigError("resolvent: F(0) must vanish");
  }
  check_horizon(F.times.back(), t_sigma);

  const double lambda = kPi / t_sigma;
  const auto& t = F.times;
  const auto& f = F.values;
  const std::size_t n = t.size();
  std::vector<double> corr(n, 0.0), u(n);
  double j = 0.0;
  u[0] = f[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double h = t[i] - t[i - 1];
    const double grow = std::exp(lambda * h);
    j = grow * j + 0.5 * h * (f[i - 1] * grow + f[i]);
    corr[i] = lambda * j;
    u[i] = f[i] + corr[i];
  }

  // Residual of U = F + lambda int U (trapezoidal integral of U).
  double worst = 0.0, integral = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    integral += 0.5 * (t[i] - t[i - 1]) * (u[i] + u[i - 1]);
    worst = std::max(worst, std::abs(u[i] - lambda * integral - f[i]));
  }

  SolverReport report;
  report.max_step_residual = scale > 0.0 ? worst / scale : worst;
  report.curve = SampledCurve(t, std::move(u), CurveLabel::USigma);
  report.correction = SampledCurve(t, std::move(corr), CurveLabel::Generic);
  report.method = SolveMethod::Resolvent;
  report.grid = "samples n=" + std::to_string(n - 1) + " (trapezoid)";
  return report;
}

SolverReport resolvent_solution(const Waveform& u0, double t_sigma,
                                const TimeGrid& grid) {
  check_t_sigma(t_sigma);
  require_builtin(u0, "Gauss resolvent path");
  validate(u0);
  check_horizon(grid.t_max(), t_sigma);

  const double lambda = kPi / t_sigma;
  const auto t = grid.points();
  const std::size_t n = t.size();
  const auto knot = knot_of(u0);
  auto fn = [&](double s) { return f_closed(u0, t_sigma, s); };

  std::vector<double> u(n), corr(n, 0.0);
  u[0] = fn(0.0);
  double j = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double a = t[i - 1], b = t[i];
    const bool singular_left = a == 0.0 || (knot && a == *knot);
    j = std::exp(lambda * (b - a)) * j +
        resolvent_panel(fn, a, b, b, lambda, singular_left);
    corr[i] = lambda * j;
    u[i] = fn(b) + corr[i];
  }

  const HalfIntegralRule rule(t);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = half_integral_exact(u0, t[i]);

  SolverReport report;
  report.max_step_residual = second_kind_residual(rule, u, g, t_sigma);
  report.curve = SampledCurve({t.begin(), t.end()}, std::move(u),
                              CurveLabel::USigma);
  report.correction = SampledCurve({t.begin(), t.end()}, std::move(corr),
                                   CurveLabel::Generic);
  report.method = SolveMethod::Resolvent;
  report.grid = grid.describe();
  return report;
}

double resolvent_at(const Waveform& u0, double t_sigma, double t) {
  check_t_sigma(t_sigma);
  require_builtin(u0, "Gauss resolvent path");
  validate(u0);
  if (!(t >= 0.0)) throw ConfigError("resolvent evaluated at negative time");
  check_horizon(t, t_sigma);
  if (t == 0.0) return 0.0;

  constexpr int kPanels = 48;
  const double lambda = kPi / t_sigma;
  auto fn = [&](double s) { return f_closed(u0, t_sigma, s); };
  std::vector<double> breaks = {0.0};
  if (const auto k = knot_of(u0); k && *k < t) breaks.push_back(*k);
  breaks.push_back(t);

  double integral = 0.0;
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double lo = breaks[seg], hi = breaks[seg + 1];
    const double width = (hi - lo) / kPanels;
    for (int p = 0; p < kPanels; ++p) {
      const double a = lo + p * width;
      const double b = p + 1 == kPanels ? hi : a + width;
      integral += resolvent_panel(fn, a, b, t, lambda, p == 0);
    }
  }
  return fn(t) + lambda * integral;
}

}  // namespace pulseloss
