#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "uavloc/metrics_io.hpp"
#include "uavloc/scenario.hpp"
#include "uavloc/simulation.hpp"

using namespace uavloc;

namespace {

/// Small, fast scenario for loop-level checks: coarse grid, few runs.
ScenarioConfig small_scenario() {
  ScenarioConfig config = preset("favorable_4uav");
  config.grid = GridSpec{-150, 150, -150, 150, 5.0};
  config.horizon = 6;
  config.runs = 4;
  return config;
}

}  // namespace

TEST_CASE("presets match the published scenarios", "[harness]") {
  CHECK(preset("realistic_4uav").horizon == 27);
  CHECK(preset("realistic_4uav").uav_starts ==
        std::vector<Point2>(4, Point2{-100, -100}));
  CHECK(preset("single_optimistic").channel.sigma_db == 0.01);
  CHECK(preset("single_realistic").channel.sigma_db == 6.0);
  CHECK(preset("single_realistic").uav_starts == std::vector<Point2>{Point2{0, 100}});
  CHECK(preset("favorable_4uav").uav_starts.size() == 4u);
  CHECK(preset("favorable_4uav").channel.sigma_db == 6.0);
  for (const std::string& name : preset_names()) {
    const ScenarioConfig config = preset(name);
    CHECK_NOTHROW(config.validate());
    CHECK(config.runs == 100);
    CHECK(config.step_m == 5.0);
    CHECK(config.channel.p0_dbm == 10.0);
    CHECK(config.channel.beta == 3.0);
  }
  CHECK(reach_ability(preset("realistic_4uav")) == Catch::Approx(0.9546).margin(1e-3));
  CHECK_THROWS_AS(preset("bogus"), ConfigError);
  CHECK(itu_r_sigma_db("urban_micro") == 3.0);
  CHECK(itu_r_sigma_db("suburban_macro") == 6.0);
  CHECK_THROWS_AS(itu_r_sigma_db("orbital"), ConfigError);
}

TEST_CASE("noiseless on-grid run localizes exactly", "[harness]") {
  ScenarioConfig config = preset("favorable_4uav");
  config.channel.sigma_db = 0.0;
  config.horizon = 4;
  config.runs = 1;
  const RunResult run = run_single(config, 0);
  CHECK(run.error_m.back() == 0.0);
  CHECK(run.r_hat.back() == config.target);
}

TEST_CASE("trajectories advance exactly one step per epoch", "[harness]") {
  const ScenarioConfig config = small_scenario();
  const RunResult run = run_single(config, 1);
  REQUIRE(run.trajectories.size() == config.uav_starts.size());
  for (const auto& trajectory : run.trajectories) {
    REQUIRE(trajectory.size() == static_cast<std::size_t>(config.horizon) + 1);
    for (std::size_t t = 1; t < trajectory.size(); ++t) {
      CHECK(distance(trajectory[t - 1], trajectory[t]) ==
            Catch::Approx(config.step_m).margin(1e-9));
      CHECK(is_finite(trajectory[t]));
    }
  }
  REQUIRE(run.headings_deg.size() == config.uav_starts.size());
  for (const auto& headings : run.headings_deg)
    CHECK(headings.size() == static_cast<std::size_t>(config.horizon));
  CHECK(run.r_hat.size() == static_cast<std::size_t>(config.horizon) + 1);
  CHECK(run.measurements.size() ==
        config.uav_starts.size() * (static_cast<std::size_t>(config.horizon) + 1));
}

TEST_CASE("identical seeds reproduce a run bit-for-bit", "[harness]") {
  const ScenarioConfig config = small_scenario();
  const RunResult a = run_single(config, 2);
  const RunResult b = run_single(config, 2);
  CHECK(a == b);
  const RunResult c = run_single(config, 3);
  CHECK(a.measurements != c.measurements);
}

TEST_CASE("accumulated d-optimality is monotone within every run", "[harness]") {
  const ScenarioConfig config = small_scenario();
  for (const RunResult& run : run_all(config)) {
    for (std::size_t t = 1; t < run.det_fim.size(); ++t)
      CHECK(run.det_fim[t] >= run.det_fim[t - 1] * (1.0 - 1e-12));
  }
}

TEST_CASE("single-run RMSE equals that run's error", "[harness]") {
  ScenarioConfig config = small_scenario();
  config.runs = 1;
  const RunResult run = run_single(config, 0);
  const std::vector<EpochMetrics> metrics = run_monte_carlo(config);
  REQUIRE(metrics.size() == run.error_m.size());
  for (std::size_t t = 0; t < metrics.size(); ++t)
    CHECK(metrics[t].rmse_m == Catch::Approx(run.error_m[t]).epsilon(1e-12));
}

TEST_CASE("noiseless off-grid RMSE stays below half a diagonal cell", "[harness]") {
  ScenarioConfig config = small_scenario();
  config.channel.sigma_db = 0.0;
  config.grid.resolution = 1.0;
  config.target = Point2{0.4, -0.3};
  config.runs = 2;
  for (const EpochMetrics& em : run_monte_carlo(config))
    CHECK(em.rmse_m <= 1.0 * std::sqrt(2.0) / 2.0 + 1e-12);
}

TEST_CASE("noise streams are independent of the planner", "[harness]") {
  ScenarioConfig config = small_scenario();
  config.runs = 2;
  config.planner = PlannerKind::greedy();
  const std::vector<RunResult> greedy_runs = run_all(config);
  config.planner = PlannerKind::predictive();
  const std::vector<RunResult> pred_runs = run_all(config);

  // every measurement is exactly its position's mean RSS plus the noise draw
  // keyed by (seed, run, uav, epoch) -- for either planner, bit-for-bit
  const auto check_noise_keying = [&](const std::vector<RunResult>& runs) {
    for (int r = 0; r < config.runs; ++r) {
      for (const Measurement& m : runs[r].measurements) {
        RngStream rng = RngStream::measurement_stream(config.master_seed, r, m.uav_id, m.epoch);
        const double slot_noise = config.channel.sigma_db * rng.normal();
        CHECK(m.rss_dbm ==
              expected_rss(m.uav_pos, config.target, config.channel, 1.0) + slot_noise);
      }
    }
  };
  check_noise_keying(greedy_runs);
  check_noise_keying(pred_runs);
  for (int r = 0; r < config.runs; ++r) {
    REQUIRE(greedy_runs[r].measurements.size() == pred_runs[r].measurements.size());
    for (std::size_t i = 0; i < greedy_runs[r].measurements.size(); ++i) {
      CHECK(greedy_runs[r].measurements[i].uav_id == pred_runs[r].measurements[i].uav_id);
      CHECK(greedy_runs[r].measurements[i].epoch == pred_runs[r].measurements[i].epoch);
    }
  }
}

TEST_CASE("compare_planners on identical kinds gives identical columns", "[harness]") {
  const ScenarioConfig config = small_scenario();
  const std::vector<PlannerKind> kinds = {PlannerKind::greedy(), PlannerKind::greedy()};
  const PlannerComparison comparison = compare_planners(config, kinds);
  CHECK(comparison.per_kind[0] == comparison.per_kind[1]);
}

TEST_CASE("metrics CSV round-trips exactly", "[harness]") {
  const ScenarioConfig config = small_scenario();
  const std::vector<EpochMetrics> metrics = run_monte_carlo(config);
  const std::string csv = metrics_to_csv(metrics, "scenario=test planner=greedy");
  CHECK(metrics_from_csv_string(csv) == metrics);

  // singular epochs serialize as an empty field and parse back as missing
  std::vector<EpochMetrics> with_gap = metrics;
  with_gap[0].mean_crlb_trace_m2.reset();
  CHECK(metrics_from_csv_string(metrics_to_csv(with_gap)) == with_gap);
}

TEST_CASE("comparison CSV lists one RMSE column per planner", "[harness]") {
  ScenarioConfig config = small_scenario();
  config.runs = 2;
  const std::vector<PlannerKind> kinds = {PlannerKind::greedy(), PlannerKind::hybrid(3)};
  const PlannerComparison comparison = compare_planners(config, kinds);
  const std::string csv = comparison_to_csv(comparison);
  CHECK(csv.find("epoch,rmse_m_greedy,rmse_m_hybrid_3") != std::string::npos);
  CHECK(csv.find("# final_rmse_m:") != std::string::npos);
}

TEST_CASE("dumped trajectories reproduce the aggregated RMSE", "[harness]") {
  const ScenarioConfig config = small_scenario();
  const std::vector<RunResult> results = run_all(config);
  const std::vector<EpochMetrics> metrics = aggregate_metrics(config, results);

  std::vector<RunResult> reparsed;
  for (const RunResult& run : results)
    reparsed.push_back(run_result_from_json_line(run_result_to_json_line(run)));

  for (std::size_t t = 0; t < metrics.size(); ++t) {
    double sq = 0.0;
    for (const RunResult& run : reparsed) {
      CHECK(distance(run.r_hat[t], config.target) == Catch::Approx(run.error_m[t]).margin(1e-12));
      sq += run.error_m[t] * run.error_m[t];
    }
    CHECK(std::sqrt(sq / reparsed.size()) == Catch::Approx(metrics[t].rmse_m).epsilon(1e-12));
  }

  for (std::size_t r = 0; r < results.size(); ++r) {
    CHECK(reparsed[r].run_index == results[r].run_index);
    CHECK(reparsed[r].r_hat == results[r].r_hat);
    CHECK(reparsed[r].trajectories == results[r].trajectories);
  }
}

TEST_CASE("scenario files round-trip", "[harness]") {
  ScenarioConfig config = preset("realistic_4uav");
  config.planner = PlannerKind::hybrid(10);
  config.master_seed = 99;
  config.heading_mode = HeadingMode::Shared;
  config.channel.sigma_db = 4.5;
  const std::string text = serialize_scenario(config);
  std::istringstream in(text);
  CHECK(parse_scenario(in) == config);
}

TEST_CASE("scenario parser rejects malformed input", "[harness]") {
  const std::string valid = serialize_scenario(preset("single_realistic"));

  SECTION("unknown key") {
    std::istringstream in(valid + "warp_factor = 9\n");
    CHECK_THROWS_AS(parse_scenario(in), ConfigError);
  }
  SECTION("wrong format version") {
    std::string text = valid;
    text.replace(text.find("format_version = 1"), 18, "format_version = 2");
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_scenario(in), ConfigError);
  }
  SECTION("missing required key") {
    std::string text;
    std::istringstream lines(valid);
    std::string line;
    while (std::getline(lines, line))
      if (line.rfind("target", 0) != 0) text += line + "\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_scenario(in), ConfigError);
  }
  SECTION("duplicate key") {
    std::istringstream in(valid + "runs = 5\n");
    CHECK_THROWS_AS(parse_scenario(in), ConfigError);
  }
  SECTION("target outside grid") {
    std::string text = valid;
    text.replace(text.find("target = (0,0)"), 14, "target = (999,0)");
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_scenario(in), ConfigError);
  }
  SECTION("comments and blank lines are fine") {
    std::istringstream in("# experiment\n\n" + valid);
    CHECK_NOTHROW(parse_scenario(in));
  }
}

TEST_CASE("scenario validation catches bad configurations", "[harness]") {
  ScenarioConfig config = preset("single_realistic");
  CHECK_NOTHROW(config.validate());

  SECTION("no UAVs") {
    config.uav_starts.clear();
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
  SECTION("zero runs") {
    config.runs = 0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
  SECTION("hybrid switch beyond horizon") {
    config.planner = PlannerKind::hybrid(config.horizon + 1);
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
  SECTION("non-positive step") {
    config.step_m = 0.0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
}
