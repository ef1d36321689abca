// Command-line front end: scenario execution, planner comparison, parameter
// sweeps, and preset listing. Outputs are metrics CSV files and optional
// JSON-lines trajectory dumps.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavloc/uavloc.hpp"

namespace {

struct ScenarioArgs {
  std::string scenario;
  std::vector<std::string> planners;
  int runs = -1;
  std::int64_t seed = -1;
  std::string out_dir = "out";
  bool trajectories = false;
};

void add_common_options(CLI::App* sub, ScenarioArgs& args, bool multi_planner) {
  sub->add_option("--scenario", args.scenario, "Preset name or scenario file path")->required();
  auto* planner = sub->add_option("--planner", args.planners,
                                  "Planner kind: greedy | predictive | hybrid:K");
  if (multi_planner) planner->expected(2, 16);
  sub->add_option("--runs", args.runs, "Override the Monte-Carlo trial count");
  sub->add_option("--seed", args.seed, "Override the master seed");
  sub->add_option("--out", args.out_dir, "Output directory (default: out)");
}

/// Loads a preset by name or a scenario file by path, plus a label used in
/// output file names.
std::pair<uavloc::ScenarioConfig, std::string> resolve_scenario(const ScenarioArgs& args) {
  const std::vector<std::string> names = uavloc::preset_names();
  uavloc::ScenarioConfig config;
  std::string label;
  if (std::find(names.begin(), names.end(), args.scenario) != names.end()) {
    config = uavloc::preset(args.scenario);
    label = args.scenario;
  } else {
    config = uavloc::parse_scenario_file(args.scenario);
    label = std::filesystem::path(args.scenario).stem().string();
  }
  if (args.runs >= 0) config.runs = args.runs;
  if (args.seed >= 0) config.master_seed = static_cast<std::uint64_t>(args.seed);
  config.validate();
  return {config, label};
}

std::string file_tag(const std::string& planner_name) {
  std::string tag = planner_name;
  std::replace(tag.begin(), tag.end(), ':', '_');
  return tag;
}

std::string context_line(const std::string& label, const uavloc::ScenarioConfig& config) {
  return "scenario=" + label + " planner=" + config.planner.name() +
         " runs=" + std::to_string(config.runs) +
         " seed=" + std::to_string(config.master_seed);
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw uavloc::ConfigError("cannot create output directory '" + dir + "'");
}

int cmd_run(const ScenarioArgs& args) {
  auto [config, label] = resolve_scenario(args);
  if (args.planners.size() > 1)
    throw uavloc::ConfigError("run: pass exactly one --planner (use `compare` for several)");
  if (!args.planners.empty()) config.planner = uavloc::PlannerKind::parse(args.planners.front());
  config.validate();

  const std::vector<uavloc::RunResult> results = uavloc::run_all(config);
  const std::vector<uavloc::EpochMetrics> metrics = uavloc::aggregate_metrics(config, results);

  ensure_out_dir(args.out_dir);
  const std::string tag = file_tag(config.planner.name());
  const std::string metrics_path = args.out_dir + "/metrics_" + tag + ".csv";
  uavloc::write_text_file(metrics_path, uavloc::metrics_to_csv(metrics, context_line(label, config)));
  std::cout << "wrote " << metrics_path << "\n";

  if (args.trajectories) {
    std::string dump;
    for (const uavloc::RunResult& run : results)
      dump += uavloc::run_result_to_json_line(run) + "\n";
    const std::string traj_path = args.out_dir + "/trajectories_" + tag + ".jsonl";
    uavloc::write_text_file(traj_path, dump);
    std::cout << "wrote " << traj_path << "\n";
  }

  std::cout << "scenario " << label << ", planner " << config.planner.name() << ", "
            << config.runs << " runs\n";
  std::cout << "final rmse_m = " << metrics.back().rmse_m << "\n";
  return 0;
}

int cmd_compare(const ScenarioArgs& args) {
  auto [config, label] = resolve_scenario(args);
  if (args.planners.size() < 2)
    throw uavloc::ConfigError("compare: pass --planner at least twice");
  std::vector<uavloc::PlannerKind> kinds;
  for (const std::string& text : args.planners) kinds.push_back(uavloc::PlannerKind::parse(text));

  const uavloc::PlannerComparison comparison = uavloc::compare_planners(config, kinds);

  ensure_out_dir(args.out_dir);
  const std::string wide_path = args.out_dir + "/comparison_" + label + ".csv";
  uavloc::write_text_file(wide_path, uavloc::comparison_to_csv(comparison));
  std::cout << "wrote " << wide_path << "\n";
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    uavloc::ScenarioConfig per_kind = config;
    per_kind.planner = kinds[k];
    const std::string path =
        args.out_dir + "/metrics_" + file_tag(kinds[k].name()) + ".csv";
    uavloc::write_text_file(
        path, uavloc::metrics_to_csv(comparison.per_kind[k], context_line(label, per_kind)));
    std::cout << "wrote " << path << "\n";
  }

  std::cout << "scenario " << label << ", " << config.runs << " paired runs\n";
  for (std::size_t k = 0; k < kinds.size(); ++k)
    std::cout << "  " << kinds[k].name() << ": final rmse_m = " << comparison.final_rmse_m(k)
              << "\n";
  return 0;
}

int cmd_sweep(const ScenarioArgs& args, const std::string& param, const std::string& values_text) {
  auto [config, label] = resolve_scenario(args);
  if (args.planners.size() > 1) throw uavloc::ConfigError("sweep: pass at most one --planner");
  if (!args.planners.empty()) config.planner = uavloc::PlannerKind::parse(args.planners.front());
  if (param != "sigma_db" && param != "switch_epoch")
    throw uavloc::ConfigError("sweep: --param must be sigma_db or switch_epoch");

  std::vector<std::pair<std::string, double>> values;
  for (std::string item : uavloc::detail::split(values_text, ',')) {
    item = uavloc::detail::trim(item);
    if (item.empty()) continue;
    if (param == "sigma_db" && uavloc::itu_r_sigma_table().count(item))
      values.emplace_back(item, uavloc::itu_r_sigma_db(item));
    else
      values.emplace_back(item, uavloc::detail::parse_double("--values", item));
  }
  if (values.empty()) throw uavloc::ConfigError("sweep: --values produced no entries");

  ensure_out_dir(args.out_dir);
  std::ostringstream summary;
  summary << param << ",final_rmse_m\n";
  std::cout << "scenario " << label << ", sweeping " << param << "\n";
  for (const auto& [text, value] : values) {
    uavloc::ScenarioConfig point = config;
    if (param == "sigma_db") {
      point.channel.sigma_db = value;
    } else {
      point.planner = uavloc::PlannerKind::hybrid(static_cast<int>(value));
    }
    point.validate();
    const std::vector<uavloc::EpochMetrics> metrics = uavloc::run_monte_carlo(point);
    const std::string path = args.out_dir + "/metrics_" + file_tag(point.planner.name()) + "_" +
                             param + "_" + text + ".csv";
    uavloc::write_text_file(path,
                            uavloc::metrics_to_csv(metrics, context_line(label, point) + " " +
                                                                param + "=" + text));
    summary << uavloc::detail::csv_double(value) << ','
            << uavloc::detail::csv_double(metrics.back().rmse_m) << '\n';
    std::cout << "  " << param << "=" << text << ": final rmse_m = " << metrics.back().rmse_m
              << "\n";
  }
  const std::string summary_path = args.out_dir + "/sweep_" + param + ".csv";
  uavloc::write_text_file(summary_path, summary.str());
  std::cout << "wrote " << summary_path << "\n";
  return 0;
}

int cmd_presets() {
  std::cout << "bundled scenarios:\n";
  for (const std::string& name : uavloc::preset_names()) {
    const uavloc::ScenarioConfig config = uavloc::preset(name);
    std::cout << "  " << name << ": " << config.uav_starts.size() << " UAV(s), sigma_db="
              << config.channel.sigma_db << ", l=" << config.step_m << " m, N=" << config.horizon
              << ", runs=" << config.runs << "\n";
  }
  std::cout << "ITU-R sigma_db names for `sweep --param sigma_db`:\n";
  for (const auto& [name, sigma] : uavloc::itu_r_sigma_table())
    std::cout << "  " << name << " = " << sigma << " dB\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RSS-driven UAV target search simulator"};
  app.require_subcommand(1);

  ScenarioArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run one scenario and write metrics CSV");
  add_common_options(run, run_args, false);
  run->add_flag("--trajectories", run_args.trajectories, "Also dump per-run JSON-lines trajectories");

  ScenarioArgs compare_args;
  CLI::App* compare =
      app.add_subcommand("compare", "Run several planners on paired noise and write a wide CSV");
  add_common_options(compare, compare_args, true);

  ScenarioArgs sweep_args;
  std::string sweep_param;
  std::string sweep_values;
  CLI::App* sweep = app.add_subcommand("sweep", "Re-run a scenario over a list of parameter values");
  add_common_options(sweep, sweep_args, false);
  sweep->add_option("--param", sweep_param, "sigma_db or switch_epoch")->required();
  sweep->add_option("--values", sweep_values,
                    "Comma-separated values; ITU-R names allowed for sigma_db")
      ->required();

  CLI::App* presets = app.add_subcommand("presets", "List bundled scenarios");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_args);
    if (compare->parsed()) return cmd_compare(compare_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_param, sweep_values);
    if (presets->parsed()) return cmd_presets();
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const uavloc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const uavloc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
