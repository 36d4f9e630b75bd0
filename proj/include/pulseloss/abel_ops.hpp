#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseloss/time_grid.hpp"
#include "pulseloss/waveform.hpp"

namespace pulseloss {

/// Product-integration rule for (A f)(t_n) = int_0^{t_n} f(s) (t_n - s)^{-1/2} ds.
///
/// f is taken piecewise linear between grid points and the kernel is
/// integrated exactly against every linear piece. With the starting
/// correction enabled, each row additionally carries weights on the first
/// four grid points that make the rule exact for s^{1/2} and s^{3/2} as well,
/// which removes the first-order error caused by the square-root behaviour
/// of Abel solutions at t = 0.
class HalfIntegralRule {
 public:
  explicit HalfIntegralRule(std::span<const double> points,
                            bool starting_correction = true);

  bool corrected() const { return corrected_; }
  std::size_t size() const { return points_.size(); }

  /// Number of weights in row n: n + 1, or 4 for n < 3 when corrected
  /// (the correction reaches ahead to the starting points).
  std::size_t row_length(std::size_t n) const;

  /// Weights of row n; `out` is resized to row_length(n).
  void row(std::size_t n, std::vector<double>& out) const;

  /// (A f) at every grid point.
  std::vector<double> apply(std::span<const double> f) const;

 private:
  std::vector<double> points_;
  std::vector<double> sqrt_points_;
  bool corrected_;
  // Piece weights by distance m = n - k on uniform grids (empty otherwise).
  std::vector<double> uniform_left_;
  std::vector<double> uniform_right_;
  // Inverse of the 4x4 matrix [phi_a(t_k / t_3)], phi = {1, s, s^1/2, s^3/2}.
  std::array<std::array<double, 4>, 4> start_inverse_{};
};

/// Half-order integral of a sampled curve on its own time axis.
SampledCurve half_integral(const SampledCurve& f,
                           bool starting_correction = true);

/// First-kind inversion U = (1/pi) d/dt [A Phi]. Requires Phi(0) = 0 within
/// `tolerance` times max|Phi|.
SampledCurve abel_invert(const SampledCurve& phi, double tolerance = 1e-9);

enum class SolveMethod { SecondKind, Resolvent, ClosedForm, Convolution };

const char* to_string(SolveMethod m);

struct SolverReport {
  SampledCurve curve;
  /// Second kind: max |A U + sqrt(t_sigma) U - g| / max|g|.
  /// Resolvent: max |U - (pi/t_sigma) int U - F| / max|F|.
  double max_step_residual = 0.0;
  SolveMethod method = SolveMethod::SecondKind;
  std::string grid;
  /// Resolvent only: the integral term added to F.
  std::optional<SampledCurve> correction;
};

struct SolverOptions {
  bool starting_correction = true;
};

/// Time-steps  A U + sqrt(t_sigma) U = A U_0  on the grid.
SolverReport solve_second_kind(const Waveform& u0, double t_sigma,
                               const TimeGrid& grid,
                               const SolverOptions& options = {});

/// F = A U_0 / sqrt(t_sigma) - A A U_0 / t_sigma; closed form for built-in
/// pulses, nested numeric half-integrals for sampled ones.
SampledCurve compute_F(const Waveform& u0, double t_sigma,
                       const TimeGrid& grid);

/// Resolvent evaluation is refused past this many t_sigma.
inline constexpr double kResolventHorizon = 5.0;

/// U = F + (pi/t_sigma) int_0^t F(s) exp(pi (t - s)/t_sigma) ds with the
/// trapezoidal rule on the samples of F. The exponential weight amplifies
/// quadrature error by up to exp(pi t/t_sigma); beyond about one t_sigma the
/// Gauss path below should be preferred.
SolverReport resolvent_solution(const SampledCurve& F, double t_sigma);

/// Same representation for a step or trapezoid, with F evaluated in closed
/// form and each grid interval integrated by Gauss-Legendre quadrature
/// (square-root substitution on intervals starting at t = 0 or at the
/// trapezoid knot).
SolverReport resolvent_solution(const Waveform& u0, double t_sigma,
                                const TimeGrid& grid);

/// Pointwise version of the Gauss resolvent path.
double resolvent_at(const Waveform& u0, double t_sigma, double t);

}  // namespace pulseloss
