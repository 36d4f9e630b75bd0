#include "pulseloss/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pulseloss/error.hpp"

namespace pulseloss {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
  if (s == "nan" || s == "NaN") return std::nan("");
  double v = 0.0;
  const char* first = s.data();
  const char* last = first + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("csv line " + std::to_string(line_no) +
                      ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", x);
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  if (table.header.size() != table.columns.size()) {
    throw ConfigError("csv: header and column count differ");
  }
  for (const auto& c : table.comments) os << "# " << c << '\n';
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    os << (j ? "," : "") << table.header[j];
  }
  os << '\n';
  const std::size_t rows = table.columns.empty() ? 0 : table.columns[0].size();
  for (const auto& col : table.columns) {
    if (col.size() != rows) throw ConfigError("csv: ragged columns");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      os << (j ? "," : "") << format_number(table.columns[j][i]);
    }
    os << '\n';
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      table.comments.push_back(trim(std::string_view(t).substr(1)));
      continue;
    }
    auto fields = split(t);
    if (!have_header) {
      table.header = std::move(fields);
      table.columns.resize(table.header.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " fields");
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      table.columns[j].push_back(parse_number(fields[j], line_no));
    }
  }
  if (!have_header) throw ConfigError("csv: missing header line");
  return table;
}

void write_curve_csv(std::ostream& os, const SampledCurve& curve,
                     const std::vector<std::string>& comments) {
  CsvTable table;
  table.comments = comments;
  table.comments.push_back(std::string("curve: ") + to_string(curve.label));
  table.header = {"t_s", "value"};
  table.columns = {curve.times, curve.values};
  write_csv(os, table);
}

SampledCurve read_curve_csv(std::istream& is) {
  auto table = read_csv(is);
  if (table.columns.size() != 2) {
    throw ConfigError("curve csv: expected two columns");
  }
  CurveLabel label = CurveLabel::Generic;
  for (const auto& c : table.comments) {
    for (auto l : {CurveLabel::USigma, CurveLabel::F, CurveLabel::Phi,
                   CurveLabel::Delta, CurveLabel::U0}) {
      if (c == std::string("curve: ") + to_string(l)) label = l;
    }
  }
  return SampledCurve(std::move(table.columns[0]), std::move(table.columns[1]),
                      label);
}

Sampled read_waveform_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open waveform file " + path.string());
  auto table = read_csv(in);
  if (table.header != std::vector<std::string>{"time_s", "volts"}) {
    throw ConfigError(path.string() + ": header must be 'time_s,volts'");
  }
  return Sampled(std::move(table.columns[0]), std::move(table.columns[1]));
}

nlohmann::json to_json(const SolverReport& report) {
  nlohmann::json j;
  j["method"] = to_string(report.method);
  j["grid"] = report.grid;
  j["max_step_residual"] = report.max_step_residual;
  j["points"] = report.curve.size();
  j["label"] = to_string(report.curve.label);
  if (report.curve.size() > 0) {
    j["t_end"] = report.curve.times.back();
    j["value_end"] = report.curve.values.back();
  }
  return j;
}

nlohmann::json to_json(const TimeConstants& tc) {
  nlohmann::json j;
  j["inductance_H_per_m"] = tc.inductance;
  j["diffusion_m2_per_s"] = tc.diffusion;
  j["t_sigma_s"] = tc.t_sigma;
  j["t_R_s"] = tc.t_R ? nlohmann::json(*tc.t_R) : nlohmann::json(nullptr);
  j["resistance_ohm_per_m"] =
      tc.resistance ? nlohmann::json(*tc.resistance) : nlohmann::json(nullptr);
  return j;
}

}  // namespace pulseloss
