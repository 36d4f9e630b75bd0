#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pulseloss/linesim_oracle.hpp"
#include "pulseloss/units_params.hpp"
#include "pulseloss/waveform.hpp"

namespace pulseloss::cli {

enum class Dim { Length, Time, None };

/// "3mm", "10 us", "2.5e-9" -> SI. Bare numbers are SI; suffixes must match
/// the dimension.
double parse_quantity(std::string_view text, Dim dim);
std::vector<double> parse_list(std::string_view text, Dim dim);

struct LineDescriptor {
  std::string geometry;  ///< "coax" | "stripline" | "" (no line given)
  std::optional<double> r_outer, r_inner, gap;
  std::optional<double> sigma, thickness, resistance;
};

struct WaveformDescriptor {
  std::string kind = "step";  ///< step | trapezoid | file
  double amplitude = 1.0;
  std::optional<double> rise_time;
  std::filesystem::path path;
};

struct GridDescriptor {
  std::size_t n = 4096;
  std::optional<double> t_max;
};

struct RunConfig {
  LineDescriptor line;
  WaveformDescriptor waveform;
  GridDescriptor grid;
  std::optional<double> t_sigma;  ///< overrides the value derived from line
  std::optional<double> t_R;
  std::string method;             ///< empty: pick per regime
  std::string regime = "auto";
  std::vector<double> deltas;
  std::vector<double> t0;         ///< s
  std::vector<double> ratios;     ///< t0/t_sigma for figure1
  double figure_t_max = 2.0;      ///< figure1 window, units of t_sigma
  FdtdConfig fdtd;
  std::filesystem::path output;
};

/// Reads the JSON schema in docs/config-schema.md; relative waveform paths
/// resolve against the config file's directory.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& j,
                       const std::filesystem::path& base_dir = {});

bool has_line(const LineDescriptor& d);
LineSpec build_line(const LineDescriptor& d);
Waveform build_waveform(const WaveformDescriptor& d);

}  // namespace pulseloss::cli
