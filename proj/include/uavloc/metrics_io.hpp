#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavloc/errors.hpp"
#include "uavloc/simulation.hpp"

namespace uavloc {

namespace detail {

inline std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    if (end == std::string::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
}

}  // namespace detail

/// Metrics CSV: one row per estimate epoch t = 0..N (N+1 rows for N moves).
/// An empty mean_crlb_trace_m2 field means the accumulated information was
/// singular in every run at that epoch. '#' lines are comments.
inline std::string metrics_to_csv(std::span<const EpochMetrics> metrics,
                                  const std::string& context = "") {
  std::ostringstream out;
  if (!context.empty()) out << "# " << context << "\n";
  out << "# rows cover all horizon+1 estimate epochs; empty mean_crlb_trace_m2 = singular FIM\n";
  out << "epoch,rmse_m,mean_det_fim,mean_crlb_trace_m2\n";
  for (const EpochMetrics& em : metrics) {
    out << em.epoch << ',' << detail::csv_double(em.rmse_m) << ','
        << detail::csv_double(em.mean_det_fim) << ',';
    if (em.mean_crlb_trace_m2) out << detail::csv_double(*em.mean_crlb_trace_m2);
    out << '\n';
  }
  return out.str();
}

inline std::vector<EpochMetrics> metrics_from_csv(std::istream& in) {
  std::vector<EpochMetrics> metrics;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "epoch,rmse_m,mean_det_fim,mean_crlb_trace_m2")
        throw ConfigError("metrics csv: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = detail::split(line, ',');
    if (fields.size() != 4) throw ConfigError("metrics csv: expected 4 fields, got '" + line + "'");
    EpochMetrics em;
    em.epoch = static_cast<int>(std::stoll(fields[0]));
    em.rmse_m = std::stod(fields[1]);
    em.mean_det_fim = std::stod(fields[2]);
    if (!fields[3].empty()) em.mean_crlb_trace_m2 = std::stod(fields[3]);
    metrics.push_back(em);
  }
  if (!header_seen) throw ConfigError("metrics csv: missing header");
  return metrics;
}

inline std::vector<EpochMetrics> metrics_from_csv_string(const std::string& text) {
  std::istringstream in(text);
  return metrics_from_csv(in);
}

inline std::vector<EpochMetrics> metrics_from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("metrics csv: cannot open '" + path + "'");
  return metrics_from_csv(in);
}

/// Wide CSV with one RMSE column per planner, on paired noise. Final errors
/// are summarized in a leading comment.
inline std::string comparison_to_csv(const PlannerComparison& comparison) {
  std::ostringstream out;
  out << "# final_rmse_m:";
  for (std::size_t k = 0; k < comparison.kinds.size(); ++k)
    out << ' ' << comparison.kinds[k].name() << '='
        << detail::csv_double(comparison.final_rmse_m(k));
  out << '\n';
  out << "epoch";
  for (const PlannerKind& kind : comparison.kinds) {
    std::string column = kind.name();
    for (char& c : column)
      if (c == ':') c = '_';
    out << ",rmse_m_" << column;
  }
  out << '\n';
  const std::size_t epochs = comparison.per_kind.front().size();
  for (std::size_t t = 0; t < epochs; ++t) {
    out << comparison.per_kind.front()[t].epoch;
    for (const auto& metrics : comparison.per_kind)
      out << ',' << detail::csv_double(metrics[t].rmse_m);
    out << '\n';
  }
  return out.str();
}

/// One JSON-lines record per run: run index plus per-epoch UAV positions,
/// estimate, and true error.
inline std::string run_result_to_json_line(const RunResult& run) {
  nlohmann::json epochs = nlohmann::json::array();
  for (std::size_t t = 0; t < run.r_hat.size(); ++t) {
    nlohmann::json positions = nlohmann::json::array();
    for (const auto& trajectory : run.trajectories)
      positions.push_back({trajectory[t].x, trajectory[t].y});
    epochs.push_back({{"epoch", t},
                      {"uav_positions", positions},
                      {"r_hat", {run.r_hat[t].x, run.r_hat[t].y}},
                      {"error_m", run.error_m[t]}});
  }
  const nlohmann::json record = {{"run_index", run.run_index}, {"epochs", epochs}};
  return record.dump();
}

/// Rebuilds the dumped fields of a RunResult (positions, estimates, errors);
/// fields that are not serialized stay empty.
inline RunResult run_result_from_json_line(const std::string& line) {
  const nlohmann::json record = nlohmann::json::parse(line);
  RunResult run;
  run.run_index = record.at("run_index").get<int>();
  const auto& epochs = record.at("epochs");
  const std::size_t uav_count =
      epochs.empty() ? 0 : epochs.front().at("uav_positions").size();
  run.trajectories.assign(uav_count, {});
  for (const auto& epoch : epochs) {
    run.r_hat.push_back(Point2{epoch.at("r_hat")[0].get<double>(),
                               epoch.at("r_hat")[1].get<double>()});
    run.error_m.push_back(epoch.at("error_m").get<double>());
    const auto& positions = epoch.at("uav_positions");
    for (std::size_t m = 0; m < uav_count; ++m)
      run.trajectories[m].push_back(
          Point2{positions[m][0].get<double>(), positions[m][1].get<double>()});
  }
  return run;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

inline std::vector<RunResult> read_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trajectory file '" + path + "'");
  std::vector<RunResult> runs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    runs.push_back(run_result_from_json_line(line));
  }
  return runs;
}

}  // namespace uavloc
