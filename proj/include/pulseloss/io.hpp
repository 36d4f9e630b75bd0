#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pulseloss/abel_ops.hpp"
#include "pulseloss/units_params.hpp"
#include "pulseloss/waveform.hpp"

namespace pulseloss {

/// Column-major table with `#` comment lines written before the header.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

/// %.8e, i.e. nine significant digits; "nan" for NaN.
std::string format_number(double x);

/// LF line endings, comma separated.
void write_csv(std::ostream& os, const CsvTable& table);

/// Reads a table written by write_csv (or by hand): `#` lines are skipped,
/// the first other line is the header, every row must be complete.
CsvTable read_csv(std::istream& is);

void write_curve_csv(std::ostream& os, const SampledCurve& curve,
                     const std::vector<std::string>& comments = {});

/// Two-column curve; throws ConfigError on a malformed file.
SampledCurve read_curve_csv(std::istream& is);

/// Measured pulse from `time_s,volts` CSV.
Sampled read_waveform_csv(const std::filesystem::path& path);

nlohmann::json to_json(const SolverReport& report);
nlohmann::json to_json(const TimeConstants& tc);

}  // namespace pulseloss
