#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseloss/waveform.hpp"

namespace pulseloss {

/// Smallest interval count accepted by the uniform grid factories.
inline constexpr std::size_t kMinGridIntervals = 16;

enum class GridKind { Uniform, UniformWithKnot, Custom };

/// Strictly increasing time points starting at 0.
class TimeGrid {
 public:
  /// n intervals of width t_max/n.
  static TimeGrid uniform(std::size_t n, double t_max);

  /// Uniform grid whose spacing is shrunk so that `knot` is a grid point:
  /// spacing = knot / max(1, round(knot n / t_max)). The realized interval
  /// count can therefore differ slightly from n. The last point is t_max.
  static TimeGrid uniform_with_knot(std::size_t n, double t_max, double knot);

  /// Arbitrary points; needs at least 4 intervals.
  static TimeGrid from_points(std::vector<double> points);

  /// uniform_with_knot when the waveform has a kink inside (0, t_max),
  /// uniform otherwise.
  static TimeGrid for_waveform(const Waveform& w, std::size_t n, double t_max);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t intervals() const { return points_.size() - 1; }
  double t_max() const { return points_.back(); }
  GridKind kind() const { return kind_; }
  std::size_t requested_intervals() const { return requested_; }
  std::optional<double> knot() const { return knot_; }

  std::string describe() const;

 private:
  TimeGrid(std::vector<double> points, GridKind kind, std::size_t requested,
           std::optional<double> knot)
      : points_(std::move(points)),
        kind_(kind),
        requested_(requested),
        knot_(knot) {}

  std::vector<double> points_;
  GridKind kind_;
  std::size_t requested_;
  std::optional<double> knot_;
};

}  // namespace pulseloss
