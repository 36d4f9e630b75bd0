#include "config.hpp"

#include <charconv>
#include <fstream>
#include <utility>

#include "pulseloss/error.hpp"
#include "pulseloss/io.hpp"

namespace pulseloss::cli {
namespace {

using nlohmann::json;

struct Suffix {
  std::string_view text;
  Dim dim;
  double factor;
};

constexpr Suffix kSuffixes[] = {
    {"km", Dim::Length, 1e3}, {"cm", Dim::Length, 1e-2}, {"mm", Dim::Length, 1e-3},
    {"um", Dim::Length, 1e-6}, {"nm", Dim::Length, 1e-9}, {"m", Dim::Length, 1.0},
    {"ms", Dim::Time, 1e-3},  {"us", Dim::Time, 1e-6},  {"ns", Dim::Time, 1e-9},
    {"ps", Dim::Time, 1e-12}, {"s", Dim::Time, 1.0},
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> number(const json& j, const char* key, Dim dim) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_quantity(v.get<std::string>(), dim);
  throw ConfigError(std::string("config: '") + key + "' must be a number or string");
}

std::vector<double> number_list(const json& j, const char* key, Dim dim) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (v.is_string()) return parse_list(v.get<std::string>(), dim);
  if (!v.is_array()) throw ConfigError(std::string("config: '") + key + "' must be a list");
  for (const auto& e : v) {
    if (e.is_number()) {
      out.push_back(e.get<double>());
    } else if (e.is_string()) {
      out.push_back(parse_quantity(e.get<std::string>(), dim));
    } else {
      throw ConfigError(std::string("config: '") + key + "' holds a non-number");
    }
  }
  return out;
}

std::string text(const json& j, const char* key, std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    throw ConfigError(std::string("config: '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys,
                    const char* where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto key : keys) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string("config: unknown key '") + k + "' in " + where);
  }
}

}  // namespace

double parse_quantity(std::string_view raw, Dim dim) {
  const auto s = strip(raw);
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    throw ConfigError("not a quantity: '" + std::string(raw) + "'");
  }
  const auto unit = strip(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (unit.empty()) return value;
  for (const auto& suf : kSuffixes) {
    if (suf.text == unit) {
      if (suf.dim != dim) {
        throw ConfigError("unit '" + std::string(unit) + "' does not fit '" +
                          std::string(raw) + "'");
      }
      return value * suf.factor;
    }
  }
  throw ConfigError("unknown unit '" + std::string(unit) + "' in '" +
                    std::string(raw) + "'");
}

std::vector<double> parse_list(std::string_view text, Dim dim) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = strip(text.substr(0, comma));
    if (item.empty()) throw ConfigError("empty entry in list");
    out.push_back(parse_quantity(item, dim));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"line", "waveform", "grid", "t_sigma", "t_R", "method", "regime",
                  "tdelta", "figure1", "fdtd", "output"},
                 "top level");
  RunConfig c;
  if (j.contains("line")) {
    const auto& l = j.at("line");
    reject_unknown(l, {"geometry", "r_outer", "r_inner", "gap", "sigma", "thickness",
                       "resistance"},
                   "line");
    c.line.geometry = text(l, "geometry", "");
    c.line.r_outer = number(l, "r_outer", Dim::Length);
    c.line.r_inner = number(l, "r_inner", Dim::Length);
    c.line.gap = number(l, "gap", Dim::Length);
    c.line.sigma = number(l, "sigma", Dim::None);
    c.line.thickness = number(l, "thickness", Dim::Length);
    c.line.resistance = number(l, "resistance", Dim::None);
  }
  if (j.contains("waveform")) {
    const auto& w = j.at("waveform");
    reject_unknown(w, {"kind", "amplitude", "rise_time", "path"}, "waveform");
    c.waveform.kind = text(w, "kind", "step");
    c.waveform.amplitude = number(w, "amplitude", Dim::None).value_or(1.0);
    c.waveform.rise_time = number(w, "rise_time", Dim::Time);
    if (w.contains("path")) {
      std::filesystem::path p = text(w, "path", "");
      c.waveform.path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
      if (!w.contains("kind")) c.waveform.kind = "file";
    }
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"n", "t_max"}, "grid");
    if (g.contains("n")) {
      if (!g.at("n").is_number_unsigned()) throw ConfigError("config: grid.n must be a positive integer");
      c.grid.n = g.at("n").get<std::size_t>();
    }
    c.grid.t_max = number(g, "t_max", Dim::Time);
  }
  c.t_sigma = number(j, "t_sigma", Dim::Time);
  c.t_R = number(j, "t_R", Dim::Time);
  c.method = text(j, "method", "");
  c.regime = text(j, "regime", "auto");
  if (j.contains("tdelta")) {
    const auto& t = j.at("tdelta");
    reject_unknown(t, {"deltas", "t0"}, "tdelta");
    c.deltas = number_list(t, "deltas", Dim::None);
    c.t0 = number_list(t, "t0", Dim::Time);
  }
  if (j.contains("figure1")) {
    const auto& f = j.at("figure1");
    reject_unknown(f, {"ratios", "t_max_over_tsigma"}, "figure1");
    c.ratios = number_list(f, "ratios", Dim::None);
    c.figure_t_max = number(f, "t_max_over_tsigma", Dim::None).value_or(c.figure_t_max);
  }
  if (j.contains("fdtd")) {
    const auto& f = j.at("fdtd");
    reject_unknown(f, {"L", "C", "R", "length", "n_cells", "cfl", "V", "t_end"}, "fdtd");
    auto& d = c.fdtd;
    d.inductance = number(f, "L", Dim::None).value_or(d.inductance);
    d.capacitance = number(f, "C", Dim::None).value_or(d.capacitance);
    d.resistance = number(f, "R", Dim::None).value_or(d.resistance);
    d.length = number(f, "length", Dim::Length).value_or(d.length);
    d.cfl = number(f, "cfl", Dim::None).value_or(d.cfl);
    d.amplitude = number(f, "V", Dim::None).value_or(d.amplitude);
    d.t_end = number(f, "t_end", Dim::Time).value_or(d.t_end);
    if (f.contains("n_cells")) d.n_cells = f.at("n_cells").get<std::size_t>();
  }
  if (j.contains("output")) c.output = text(j, "output", "");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    return parse_config(j, path.parent_path());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

bool has_line(const LineDescriptor& d) { return !d.geometry.empty(); }

LineSpec build_line(const LineDescriptor& d) {
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw ConfigError(std::string("line: missing '") + name + "'");
    return *v;
  };
  LineSpec spec;
  if (d.geometry == "coax") {
    spec.geometry = Coaxial{need(d.r_outer, "r_outer"), need(d.r_inner, "r_inner")};
  } else if (d.geometry == "stripline") {
    spec.geometry = Stripline{need(d.gap, "gap")};
  } else {
    throw ConfigError("line: geometry must be 'coax' or 'stripline', got '" +
                      d.geometry + "'");
  }
  spec.material = ElectrodeMaterial{need(d.sigma, "sigma"), d.thickness};
  spec.resistance_override = d.resistance;
  validate(spec);
  return spec;
}

Waveform build_waveform(const WaveformDescriptor& d) {
  Waveform w;
  if (d.kind == "step") {
    w = Step{d.amplitude};
  } else if (d.kind == "trapezoid") {
    if (!d.rise_time) throw ConfigError("waveform: trapezoid needs a rise time");
    w = Trapezoid{d.amplitude, *d.rise_time};
  } else if (d.kind == "file") {
    w = read_waveform_csv(d.path);
  } else {
    throw ConfigError("waveform: kind must be step, trapezoid or file");
  }
  validate(w);
  require_monotone(w);
  return w;
}

}  // namespace pulseloss::cli
