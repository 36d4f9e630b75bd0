#include "pulseloss/time_grid.hpp"

#include <cmath>
#include <sstream>

#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

void check_uniform_args(std::size_t n, double t_max) {
  if (n < kMinGridIntervals) {
    throw ConfigError("grid too coarse: need at least 16 intervals");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ConfigError("grid t_max must be > 0");
  }
}

}  // namespace

TimeGrid TimeGrid::uniform(std::size_t n, double t_max) {
  check_uniform_args(n, t_max);
  std::vector<double> pts(n + 1);
  const double h = t_max / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) * h;
  pts[n] = t_max;
  return TimeGrid(std::move(pts), GridKind::Uniform, n, std::nullopt);
}

TimeGrid TimeGrid::uniform_with_knot(std::size_t n, double t_max,
                                     double knot) {
  check_uniform_args(n, t_max);
  if (!(knot > 0.0) || !(knot < t_max)) {
    throw ConfigError("grid knot must lie inside (0, t_max)");
  }
  const double h_req = t_max / static_cast<double>(n);
  const auto m = static_cast<std::size_t>(
      std::max(1.0, std::round(knot / h_req)));
  const double h = knot / static_cast<double>(m);
  // Points strictly below t_max, then t_max itself; a remainder shorter than
  // 1e-9 h is absorbed into the last interval.
  const auto total = static_cast<std::size_t>(std::ceil(t_max / h - 1e-9));
  std::vector<double> pts;
  pts.reserve(total + 1);
  for (std::size_t i = 0; i < total; ++i) pts.push_back(static_cast<double>(i) * h);
  pts[m] = knot;
  pts.push_back(t_max);
  if (pts.size() - 1 < kMinGridIntervals) {
    throw ConfigError("grid too coarse after knot alignment");
  }
  return TimeGrid(std::move(pts), GridKind::UniformWithKnot, n, knot);
}

TimeGrid TimeGrid::from_points(std::vector<double> points) {
  if (points.size() < 5) {
    throw ConfigError("grid needs at least 4 intervals");
  }
  if (points.front() != 0.0) throw ConfigError("grid must start at t = 0");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw ConfigError("grid points must strictly increase");
    }
  }
  const std::size_t n = points.size() - 1;
  return TimeGrid(std::move(points), GridKind::Custom, n, std::nullopt);
}

TimeGrid TimeGrid::for_waveform(const Waveform& w, std::size_t n,
                                double t_max) {
  if (const auto k = knot_of(w); k && *k > 0.0 && *k < t_max) {
    return uniform_with_knot(n, t_max, *k);
  }
  return uniform(n, t_max);
}

std::string TimeGrid::describe() const {
  std::ostringstream os;
  os.precision(9);
  switch (kind_) {
    case GridKind::Uniform:
      os << "uniform n=" << intervals() << " t_max=" << t_max();
      break;
    case GridKind::UniformWithKnot:
      os << "uniform-with-knot n=" << intervals() << " t_max=" << t_max()
         << " knot=" << *knot_;
      break;
    case GridKind::Custom:
      os << "custom n=" << intervals() << " t_max=" << t_max();
      break;
  }
  return os.str();
}

}  // namespace pulseloss
