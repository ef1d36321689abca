#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "uavloc/channel.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/estimator.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/planner.hpp"

namespace uavloc {

/// Full description of one simulated search experiment.
struct ScenarioConfig {
  ChannelParams channel;
  std::vector<Point2> uav_starts;
  Point2 target;
  double step_m = 5.0;  ///< l, distance flown per epoch
  int horizon = 15;     ///< N, the last measurement epoch (N moves, N+1 estimates)
  PlannerKind planner = PlannerKind::greedy();
  GridSpec grid;
  double angle_step_deg = 5.0;
  double d_min_m = 1.0;
  int runs = 100;  ///< Monte-Carlo trial count
  std::uint64_t master_seed = 1;
  HeadingMode heading_mode = HeadingMode::PerUav;

  void validate() const {
    channel.validate();
    grid.validate();
    if (uav_starts.empty()) throw ConfigError("scenario: uav_starts must be non-empty");
    for (const Point2& p : uav_starts)
      if (!is_finite(p)) throw ConfigError("scenario: uav_starts must be finite");
    if (!is_finite(target)) throw ConfigError("scenario: target must be finite");
    if (!grid.contains(target)) throw ConfigError("scenario: target must lie inside the grid");
    if (!(step_m > 0.0)) throw ConfigError("scenario: step_m must be > 0");
    if (horizon < 1) throw ConfigError("scenario: horizon must be >= 1");
    if (runs < 1) throw ConfigError("scenario: runs must be >= 1");
    if (!(angle_step_deg > 0.0) || !(angle_step_deg <= 360.0))
      throw ConfigError("scenario: angle_step_deg must be in (0, 360]");
    if (!(d_min_m > 0.0)) throw ConfigError("scenario: d_min_m must be > 0");
    if (planner.type == PlannerType::Hybrid &&
        (planner.switch_epoch < 0 || planner.switch_epoch > horizon))
      throw ConfigError("scenario: hybrid switch epoch must be in [0, horizon]");
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

inline double reach_ability(const ScenarioConfig& config) {
  return reach_ability(config.uav_starts, config.target, config.horizon, config.step_m);
}

/// ITU-R LOS shadowing presets (upper bounds, dB) usable in sigma sweeps.
inline const std::map<std::string, double>& itu_r_sigma_table() {
  static const std::map<std::string, double> table = {
      {"urban_micro", 3.0},
      {"urban_macro", 4.0},
      {"suburban_macro", 6.0},
      {"rural_macro", 6.0},
  };
  return table;
}

inline double itu_r_sigma_db(const std::string& name) {
  const auto& table = itu_r_sigma_table();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown ITU-R preset '" + name + "'");
  return it->second;
}

inline std::vector<std::string> preset_names() {
  return {"single_optimistic", "single_realistic", "favorable_4uav", "realistic_4uav"};
}

/// Bundled scenario presets.
///
/// single_*: one UAV from (0, 100) against a target at the origin, l = 5 m,
/// N = 15, with optimistic (0.01 dB) or realistic (6 dB) shadowing. The search
/// grid is a 300 m square centered on the UAV start at 1 m resolution.
///
/// favorable_4uav: four UAVs on the corners of a 200 m square around the
/// target; realistic_4uav: four UAVs all departing (-100, -100). Both use
/// sigma = 6 dB, l = 5 m, N = 27, and a 300 m square grid about the origin.
inline ScenarioConfig preset(const std::string& name) {
  ScenarioConfig config;
  config.channel = ChannelParams{10.0, 3.0, 1.0, 6.0};
  config.target = Point2{0.0, 0.0};
  config.step_m = 5.0;
  config.angle_step_deg = 5.0;
  config.d_min_m = 1.0;
  config.runs = 100;
  config.master_seed = 1;
  config.planner = PlannerKind::greedy();

  if (name == "single_optimistic" || name == "single_realistic") {
    config.channel.sigma_db = (name == "single_optimistic") ? 0.01 : 6.0;
    config.uav_starts = {Point2{0.0, 100.0}};
    config.horizon = 15;
    config.grid = GridSpec{-150.0, 150.0, -50.0, 250.0, 1.0};
    return config;
  }
  if (name == "favorable_4uav" || name == "realistic_4uav") {
    config.horizon = 27;
    config.grid = GridSpec{-150.0, 150.0, -150.0, 150.0, 1.0};
    if (name == "favorable_4uav") {
      config.uav_starts = {Point2{-100.0, -100.0}, Point2{100.0, -100.0}, Point2{-100.0, 100.0},
                           Point2{100.0, 100.0}};
    } else {
      config.uav_starts = std::vector<Point2>(4, Point2{-100.0, -100.0});
    }
    return config;
  }
  throw ConfigError("unknown preset '" + name + "' (see `uavloc presets`)");
}

inline constexpr int kScenarioFormatVersion = 1;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("scenario: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("scenario: key '" + key + "' has non-integer value '" + value + "'");
  }
}

/// Parses "(x,y)".
inline Point2 parse_point(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.size() < 5 || v.front() != '(' || v.back() != ')')
    throw ConfigError("scenario: key '" + key + "' expects '(x,y)', got '" + value + "'");
  const std::size_t comma = v.find(',');
  if (comma == std::string::npos)
    throw ConfigError("scenario: key '" + key + "' expects '(x,y)', got '" + value + "'");
  return Point2{parse_double(key, trim(v.substr(1, comma - 1))),
                parse_double(key, trim(v.substr(comma + 1, v.size() - comma - 2)))};
}

/// Parses a whitespace-separated list of "(x,y)" pairs.
inline std::vector<Point2> parse_point_list(const std::string& key, const std::string& value) {
  std::vector<Point2> points;
  std::size_t pos = 0;
  while (pos < value.size()) {
    while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
    if (pos >= value.size()) break;
    const std::size_t close = value.find(')', pos);
    if (value[pos] != '(' || close == std::string::npos)
      throw ConfigError("scenario: key '" + key + "' expects '(x,y) (x,y) ...', got '" + value +
                        "'");
    points.push_back(parse_point(key, value.substr(pos, close - pos + 1)));
    pos = close + 1;
  }
  if (points.empty())
    throw ConfigError("scenario: key '" + key + "' expects at least one '(x,y)' pair");
  return points;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_point(const Point2& p) {
  return "(" + format_double(p.x) + "," + format_double(p.y) + ")";
}

}  // namespace detail

/// Parses the flat key-value scenario format (see serialize_scenario). Lines
/// are `key = value`; '#' starts a comment. Unknown keys are configuration
/// errors so typos never pass silently.
inline ScenarioConfig parse_scenario(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = detail::trim(line);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario: line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("scenario: line " + std::to_string(line_no) + " has an empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError("scenario: duplicate key '" + key + "'");
  }

  static const std::set<std::string> known = {
      "format_version", "p0_dbm",      "beta",       "d0_m",           "sigma_db",
      "uav_starts",     "target",      "step_m",     "horizon",        "planner",
      "grid_x_min",     "grid_x_max",  "grid_y_min", "grid_y_max",     "grid_resolution",
      "angle_step_deg", "d_min_m",     "runs",       "master_seed",    "heading_mode"};
  for (const auto& [key, value] : kv)
    if (!known.count(key)) throw ConfigError("scenario: unknown key '" + key + "'");

  const auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("scenario: missing required key '" + key + "'");
    return it->second;
  };
  const auto optional = [&](const std::string& key, const std::string& fallback) -> std::string {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  if (detail::parse_int("format_version", require("format_version")) != kScenarioFormatVersion)
    throw ConfigError("scenario: unsupported format_version (expected " +
                      std::to_string(kScenarioFormatVersion) + ")");

  ScenarioConfig config;
  config.channel.p0_dbm = detail::parse_double("p0_dbm", require("p0_dbm"));
  config.channel.beta = detail::parse_double("beta", require("beta"));
  config.channel.d0_m = detail::parse_double("d0_m", optional("d0_m", "1"));
  config.channel.sigma_db = detail::parse_double("sigma_db", require("sigma_db"));
  config.uav_starts = detail::parse_point_list("uav_starts", require("uav_starts"));
  config.target = detail::parse_point("target", require("target"));
  config.step_m = detail::parse_double("step_m", require("step_m"));
  config.horizon = static_cast<int>(detail::parse_int("horizon", require("horizon")));
  config.planner = PlannerKind::parse(optional("planner", "greedy"));
  config.grid.x_min = detail::parse_double("grid_x_min", require("grid_x_min"));
  config.grid.x_max = detail::parse_double("grid_x_max", require("grid_x_max"));
  config.grid.y_min = detail::parse_double("grid_y_min", require("grid_y_min"));
  config.grid.y_max = detail::parse_double("grid_y_max", require("grid_y_max"));
  config.grid.resolution = detail::parse_double("grid_resolution", require("grid_resolution"));
  config.angle_step_deg = detail::parse_double("angle_step_deg", optional("angle_step_deg", "5"));
  config.d_min_m = detail::parse_double("d_min_m", optional("d_min_m", "1"));
  config.runs = static_cast<int>(detail::parse_int("runs", optional("runs", "100")));
  config.master_seed =
      static_cast<std::uint64_t>(detail::parse_int("master_seed", optional("master_seed", "1")));
  config.heading_mode = parse_heading_mode(optional("heading_mode", "per_uav"));
  config.validate();
  return config;
}

inline ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open file '" + path + "'");
  return parse_scenario(in);
}

inline std::string serialize_scenario(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "format_version = " << kScenarioFormatVersion << "\n";
  out << "p0_dbm = " << detail::format_double(config.channel.p0_dbm) << "\n";
  out << "beta = " << detail::format_double(config.channel.beta) << "\n";
  out << "d0_m = " << detail::format_double(config.channel.d0_m) << "\n";
  out << "sigma_db = " << detail::format_double(config.channel.sigma_db) << "\n";
  out << "uav_starts =";
  for (const Point2& p : config.uav_starts) out << " " << detail::format_point(p);
  out << "\n";
  out << "target = " << detail::format_point(config.target) << "\n";
  out << "step_m = " << detail::format_double(config.step_m) << "\n";
  out << "horizon = " << config.horizon << "\n";
  out << "planner = " << config.planner.name() << "\n";
  out << "grid_x_min = " << detail::format_double(config.grid.x_min) << "\n";
  out << "grid_x_max = " << detail::format_double(config.grid.x_max) << "\n";
  out << "grid_y_min = " << detail::format_double(config.grid.y_min) << "\n";
  out << "grid_y_max = " << detail::format_double(config.grid.y_max) << "\n";
  out << "grid_resolution = " << detail::format_double(config.grid.resolution) << "\n";
  out << "angle_step_deg = " << detail::format_double(config.angle_step_deg) << "\n";
  out << "d_min_m = " << detail::format_double(config.d_min_m) << "\n";
  out << "runs = " << config.runs << "\n";
  out << "master_seed = " << config.master_seed << "\n";
  out << "heading_mode = " << heading_mode_name(config.heading_mode) << "\n";
  return out.str();
}

}  // namespace uavloc
