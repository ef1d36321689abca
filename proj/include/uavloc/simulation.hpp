#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "uavloc/channel.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/estimator.hpp"
#include "uavloc/fisher.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/planner.hpp"
#include "uavloc/rng.hpp"
#include "uavloc/scenario.hpp"

namespace uavloc {

/// Everything recorded during one simulated search. All per-epoch vectors
/// cover the horizon+1 measurement epochs t = 0..N; trajectories hold the
/// horizon+1 waypoints of each UAV and headings the N flown headings.
struct RunResult {
  int run_index = 0;
  std::vector<Point2> r_hat;
  std::vector<double> error_m;
  std::vector<double> det_fim;
  std::vector<std::optional<double>> crlb_trace_m2;
  std::vector<std::vector<Point2>> trajectories;
  std::vector<std::vector<double>> headings_deg;
  std::vector<Measurement> measurements;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Monte-Carlo aggregate for one estimate epoch. mean_crlb_trace_m2 averages
/// the runs whose accumulated information is invertible at that epoch and is
/// absent when none is.
struct EpochMetrics {
  int epoch = 0;
  double rmse_m = 0.0;
  double mean_det_fim = 0.0;
  std::optional<double> mean_crlb_trace_m2;

  friend bool operator==(const EpochMetrics&, const EpochMetrics&) = default;
};

/// One deterministic search: at every epoch t = 0..N each UAV measures at its
/// current position, the estimate is refreshed from all measurements so far,
/// and (below the horizon) the planner picks headings and the UAVs advance
/// step_m. Identical (master_seed, run_index) pairs reproduce the result
/// bit-for-bit.
inline RunResult run_single(const ScenarioConfig& config, int run_index) {
  config.validate();
  const int m_count = static_cast<int>(config.uav_starts.size());
  const int horizon = config.horizon;

  // Information and planning need sigma > 0; the noiseless case plans with
  // the optimistic 0.01 dB instead. Heading argmaxes are invariant to this
  // scale, so trajectories do not depend on the substitute value.
  ChannelParams fim_params = config.channel;
  fim_params.sigma_db = std::max(fim_params.sigma_db, 0.01);

  RunResult result;
  result.run_index = run_index;
  result.trajectories.assign(m_count, {});
  result.headings_deg.assign(m_count, {});

  std::vector<Point2> positions = config.uav_starts;
  for (int m = 0; m < m_count; ++m) {
    result.trajectories[m].reserve(horizon + 1);
    result.trajectories[m].push_back(positions[m]);
  }

  MleAccumulator objective(config.grid, config.channel, config.d_min_m);
  std::vector<std::vector<Point2>> position_history;
  std::vector<double> prev_headings;

  for (int t = 0; t <= horizon; ++t) {
    for (int m = 0; m < m_count; ++m) {
      RngStream rng = RngStream::measurement_stream(config.master_seed,
                                                    static_cast<std::uint64_t>(run_index),
                                                    static_cast<std::uint64_t>(m),
                                                    static_cast<std::uint64_t>(t));
      const Measurement meas =
          sample_rss(positions[m], config.target, config.channel, rng, config.d_min_m, m, t);
      result.measurements.push_back(meas);
      objective.add(meas);
    }

    const Point2 estimate = objective.argmin();
    result.r_hat.push_back(estimate);
    result.error_m.push_back(distance(estimate, config.target));

    // the information of every epoch so far, re-evaluated at the fresh
    // estimate: the planner's accumulated term tracks the current belief
    position_history.push_back(positions);
    std::vector<FimMatrix> history;
    history.reserve(position_history.size());
    for (const auto& past : position_history)
      history.push_back(fim_epoch(past, estimate, fim_params, config.d_min_m));
    const FimMatrix accumulated = fim_accumulate(history);

    result.det_fim.push_back(d_optimality(accumulated));
    const std::optional<Cov2> bound = crlb(accumulated);
    result.crlb_trace_m2.push_back(bound ? std::optional<double>(bound->trace()) : std::nullopt);

    if (t < horizon) {
      PlannerState state;
      state.epoch = t;
      state.horizon = horizon;
      state.step_m = config.step_m;
      state.angle_step_deg = config.angle_step_deg;
      state.uav_positions = positions;
      state.accumulated_fim = accumulated;
      state.r_hat = estimate;
      state.prev_headings_deg = prev_headings;

      const std::vector<double> headings =
          plan_step(config.planner, state, fim_params, config.d_min_m, config.heading_mode);
      for (int m = 0; m < m_count; ++m) {
        positions[m] = candidate_position(positions[m], headings[m], 1, config.step_m);
        result.trajectories[m].push_back(positions[m]);
        result.headings_deg[m].push_back(headings[m]);
      }
      prev_headings = headings;
    }
  }

  for (const auto& trajectory : result.trajectories)
    for (const Point2& p : trajectory)
      if (!is_finite(p)) throw NumericalError("run_single: non-finite UAV position");
  for (const Point2& p : result.r_hat)
    if (!is_finite(p)) throw NumericalError("run_single: non-finite estimate");
  return result;
}

/// All Monte-Carlo trials, parallelized over runs. Results are indexed by
/// run, so the outcome is independent of thread scheduling.
inline std::vector<RunResult> run_all(const ScenarioConfig& config) {
  config.validate();
  std::vector<RunResult> results(static_cast<std::size_t>(config.runs));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(config.runs));
  if (workers <= 1) {
    for (int r = 0; r < config.runs; ++r) results[r] = run_single(config, r);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < config.runs; r = next.fetch_add(1)) {
        try {
          results[r] = run_single(config, r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Per-epoch aggregates over completed runs. Summation is in run-index order,
/// so the aggregate does not depend on execution order either.
inline std::vector<EpochMetrics> aggregate_metrics(const ScenarioConfig& config,
                                                   std::span<const RunResult> results) {
  std::vector<EpochMetrics> metrics;
  metrics.reserve(config.horizon + 1);
  const double run_count = static_cast<double>(results.size());
  for (int t = 0; t <= config.horizon; ++t) {
    EpochMetrics em;
    em.epoch = t;
    double sq_err = 0.0;
    double det_sum = 0.0;
    double crlb_sum = 0.0;
    int crlb_count = 0;
    for (const RunResult& run : results) {
      sq_err += run.error_m[t] * run.error_m[t];
      det_sum += run.det_fim[t];
      if (run.crlb_trace_m2[t]) {
        crlb_sum += *run.crlb_trace_m2[t];
        ++crlb_count;
      }
    }
    em.rmse_m = std::sqrt(sq_err / run_count);
    em.mean_det_fim = det_sum / run_count;
    if (crlb_count > 0) em.mean_crlb_trace_m2 = crlb_sum / static_cast<double>(crlb_count);
    metrics.push_back(em);
  }
  return metrics;
}

inline std::vector<EpochMetrics> run_monte_carlo(const ScenarioConfig& config) {
  const std::vector<RunResult> results = run_all(config);
  return aggregate_metrics(config, results);
}

/// Side-by-side planner results on identical noise realizations.
struct PlannerComparison {
  std::vector<PlannerKind> kinds;
  std::vector<std::vector<EpochMetrics>> per_kind;

  double final_rmse_m(std::size_t kind_index) const {
    return per_kind.at(kind_index).back().rmse_m;
  }
};

/// Runs every planner kind on the same scenario and master seed. Measurement
/// noise is keyed by (seed, run, uav, epoch) alone, so all planners face the
/// same noise sequence and differ only through their trajectories.
inline PlannerComparison compare_planners(const ScenarioConfig& config,
                                          std::span<const PlannerKind> kinds) {
  if (kinds.size() < 2)
    throw std::invalid_argument("compare_planners: need at least two planner kinds");
  PlannerComparison comparison;
  for (const PlannerKind& kind : kinds) {
    ScenarioConfig per_kind = config;
    per_kind.planner = kind;
    comparison.kinds.push_back(kind);
    comparison.per_kind.push_back(run_monte_carlo(per_kind));
  }
  return comparison;
}

}  // namespace uavloc
