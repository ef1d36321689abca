#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavloc/channel.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/fisher.hpp"
#include "uavloc/geometry.hpp"

namespace uavloc {

enum class PlannerType { Greedy, Predictive, Hybrid };

/// Planner selection. Hybrid runs greedy for epochs below switch_epoch and
/// predictive from switch_epoch on.
struct PlannerKind {
  PlannerType type = PlannerType::Greedy;
  int switch_epoch = 0;

  static PlannerKind greedy() { return {PlannerType::Greedy, 0}; }
  static PlannerKind predictive() { return {PlannerType::Predictive, 0}; }
  static PlannerKind hybrid(int switch_epoch) { return {PlannerType::Hybrid, switch_epoch}; }

  bool predictive_at(int epoch) const {
    switch (type) {
      case PlannerType::Greedy: return false;
      case PlannerType::Predictive: return true;
      case PlannerType::Hybrid: return epoch >= switch_epoch;
    }
    return false;
  }

  std::string name() const {
    switch (type) {
      case PlannerType::Greedy: return "greedy";
      case PlannerType::Predictive: return "predictive";
      case PlannerType::Hybrid: return "hybrid:" + std::to_string(switch_epoch);
    }
    return "unknown";
  }

  /// Parses "greedy", "predictive", or "hybrid:K".
  static PlannerKind parse(const std::string& text) {
    if (text == "greedy") return greedy();
    if (text == "predictive") return predictive();
    if (text.rfind("hybrid:", 0) == 0) {
      const std::string arg = text.substr(7);
      try {
        std::size_t used = 0;
        const int k = std::stoi(arg, &used);
        if (used != arg.size() || k < 0) throw std::invalid_argument(arg);
        return hybrid(k);
      } catch (const std::exception&) {
        throw ConfigError("planner: invalid hybrid switch epoch '" + arg + "'");
      }
    }
    throw ConfigError("planner: unknown kind '" + text + "' (expected greedy|predictive|hybrid:K)");
  }

  friend bool operator==(const PlannerKind&, const PlannerKind&) = default;
};

/// Whether each UAV optimizes its own heading (sequential coordinate ascent in
/// ascending UAV index) or all UAVs share one heading per epoch.
enum class HeadingMode { PerUav, Shared };

inline HeadingMode parse_heading_mode(const std::string& text) {
  if (text == "per_uav") return HeadingMode::PerUav;
  if (text == "shared") return HeadingMode::Shared;
  throw ConfigError("heading_mode: expected per_uav|shared, got '" + text + "'");
}

inline std::string heading_mode_name(HeadingMode mode) {
  return mode == HeadingMode::PerUav ? "per_uav" : "shared";
}

/// Everything a heading decision at epoch t sees.
struct PlannerState {
  int epoch = 0;    ///< t, in [0, horizon)
  int horizon = 0;  ///< N, the last measurement epoch
  double step_m = 0.0;
  double angle_step_deg = 5.0;
  std::vector<Point2> uav_positions;  ///< at epoch t
  FimMatrix accumulated_fim;          ///< sum of per-epoch information through t
  Point2 r_hat;                       ///< current target estimate
  /// Heading each UAV flew on its most recent move. Empty before the first
  /// move; peers are then anticipated to head straight at r_hat.
  std::vector<double> prev_headings_deg;
};

/// Position after k straight steps of length step_m along alpha_deg.
inline Point2 candidate_position(const Point2& pos, double alpha_deg, int k, double step_m) {
  const double rad = deg_to_rad(alpha_deg);
  return Point2{pos.x + k * step_m * std::cos(rad), pos.y + k * step_m * std::sin(rad)};
}

/// Candidate heading grid {0, step, ..., 360 - step} degrees.
inline std::vector<double> heading_grid(double angle_step_deg) {
  if (!(angle_step_deg > 0.0) || !(angle_step_deg <= 360.0))
    throw std::invalid_argument("heading_grid: angle step must be in (0, 360]");
  std::vector<double> grid;
  for (int i = 0; i * angle_step_deg < 360.0; ++i) grid.push_back(i * angle_step_deg);
  return grid;
}

namespace detail {

/// Scans the heading grid and returns the smallest angle attaining the
/// maximum score, which makes the argmax independent of evaluation order.
template <typename ScoreFn>
double best_heading(double angle_step_deg, ScoreFn&& score) {
  double best_angle = 0.0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const double angle : heading_grid(angle_step_deg)) {
    const double s = score(angle);
    if (s > best_score) {
      best_score = s;
      best_angle = angle;
    }
  }
  return best_angle;
}

}  // namespace detail

/// One-step-ahead heading for one UAV: maximizes the determinant of the
/// accumulated information plus the next-epoch swarm information.
///
/// `peer_next` holds every UAV's assumed position at epoch t+1; the entry at
/// uav_index is ignored and replaced by the candidate advance. Peers already
/// planned this epoch sit at their committed next positions, peers not yet
/// planned at their current ones.
inline double greedy_direction(const PlannerState& state, int uav_index,
                               std::span<const Point2> peer_next, const ChannelParams& params,
                               double d_min_m) {
  std::vector<Point2> next(peer_next.begin(), peer_next.end());
  const Point2 own = state.uav_positions.at(uav_index);
  return detail::best_heading(state.angle_step_deg, [&](double angle) {
    next[uav_index] = candidate_position(own, angle, 1, state.step_m);
    return d_optimality(state.accumulated_fim + fim_epoch(next, state.r_hat, params, d_min_m));
  });
}

/// Horizon heading for one UAV: maximizes the determinant of the accumulated
/// information plus the swarm information summed over every remaining epoch,
/// with this UAV advancing k steps straight along the candidate heading.
///
/// Peer motion over the horizon is anticipated as the straight continuation of
/// the one-step displacement implied by `peer_next` (committed headings for
/// already-planned peers, most recent headings otherwise).
inline double predictive_direction(const PlannerState& state, int uav_index,
                                   std::span<const Point2> peer_next, const ChannelParams& params,
                                   double d_min_m) {
  const int remaining = state.horizon - state.epoch;
  if (remaining < 1)
    throw std::invalid_argument("predictive_direction: no remaining steps before the horizon");
  const int m_count = static_cast<int>(state.uav_positions.size());
  const Point2 own = state.uav_positions.at(uav_index);
#ifdef UAVLOC_PREDICTIVE_OWN_PATH
  (void)peer_next;
  std::vector<Point2> at_k(1);
  return detail::best_heading(state.angle_step_deg, [&](double angle) {
    FimMatrix total = state.accumulated_fim;
    for (int k = 1; k <= remaining; ++k) {
      at_k[0] = candidate_position(own, angle, k, state.step_m);
      total += fim_epoch(at_k, state.r_hat, params, d_min_m);
    }
    return d_optimality(total);
  });
#elif defined(UAVLOC_PREDICTIVE_STATIC_PEERS)
  std::vector<Point2> at_k(state.uav_positions.begin(), state.uav_positions.end());
  return detail::best_heading(state.angle_step_deg, [&](double angle) {
    FimMatrix total = state.accumulated_fim;
    for (int k = 1; k <= remaining; ++k) {
      at_k[uav_index] = candidate_position(own, angle, k, state.step_m);
      total += fim_epoch(at_k, state.r_hat, params, d_min_m);
    }
    return d_optimality(total);
  });
#else
  std::vector<Point2> at_k(static_cast<std::size_t>(m_count));
  return detail::best_heading(state.angle_step_deg, [&](double angle) {
    FimMatrix total = state.accumulated_fim;
    for (int k = 1; k <= remaining; ++k) {
      for (int j = 0; j < m_count; ++j) {
        if (j == uav_index) {
          at_k[j] = candidate_position(own, angle, k, state.step_m);
        } else if (k == 1) {
          at_k[j] = peer_next[j];
        } else {
          const Point2& pos = state.uav_positions[j];
          at_k[j] = Point2{pos.x + k * (peer_next[j].x - pos.x),
                           pos.y + k * (peer_next[j].y - pos.y)};
        }
      }
      total += fim_epoch(at_k, state.r_hat, params, d_min_m);
    }
    return d_optimality(total);
  });
#endif
}

/// Headings for all UAVs at the current epoch, one per UAV in index order.
///
/// Per-UAV mode runs sequential coordinate ascent: UAV m's decision sees the
/// committed next positions of UAVs below m. For the predictive horizon, peers
/// not yet planned are anticipated to continue along their most recent heading
/// (straight at r_hat before the first move). Shared mode picks the single
/// heading that every UAV flies together.
inline std::vector<double> plan_step(const PlannerKind& kind, const PlannerState& state,
                                     const ChannelParams& params, double d_min_m,
                                     HeadingMode mode = HeadingMode::PerUav) {
  const int m_count = static_cast<int>(state.uav_positions.size());
  if (m_count == 0) throw std::invalid_argument("plan_step: no UAVs");
  if (state.epoch >= state.horizon)
    throw std::invalid_argument("plan_step: epoch must be below the horizon");
  const bool predictive = kind.predictive_at(state.epoch);

  if (mode == HeadingMode::Shared) {
    std::vector<Point2> at_k(static_cast<std::size_t>(m_count));
    const double angle = detail::best_heading(state.angle_step_deg, [&](double a) {
      FimMatrix total = state.accumulated_fim;
      const int steps = predictive ? state.horizon - state.epoch : 1;
      for (int k = 1; k <= steps; ++k) {
        for (int j = 0; j < m_count; ++j)
          at_k[j] = candidate_position(state.uav_positions[j], a, k, state.step_m);
        total += fim_epoch(at_k, state.r_hat, params, d_min_m);
      }
      return d_optimality(total);
    });
    return std::vector<double>(static_cast<std::size_t>(m_count), angle);
  }

  std::vector<Point2> peer_next(state.uav_positions.begin(), state.uav_positions.end());
  if (predictive) {
    for (int j = 0; j < m_count; ++j) {
      const double heading = state.prev_headings_deg.empty()
                                 ? bearing_deg(state.uav_positions[j], state.r_hat)
                                 : state.prev_headings_deg.at(j);
      peer_next[j] = candidate_position(state.uav_positions[j], heading, 1, state.step_m);
    }
  }
  std::vector<double> headings(static_cast<std::size_t>(m_count), 0.0);
  for (int m = 0; m < m_count; ++m) {
    headings[m] = predictive ? predictive_direction(state, m, peer_next, params, d_min_m)
                             : greedy_direction(state, m, peer_next, params, d_min_m);
    peer_next[m] = candidate_position(state.uav_positions[m], headings[m], 1, state.step_m);
  }
  return headings;
}

/// Ratio of total travel length to the mean initial UAV-target distance.
inline double reach_ability(std::span<const Point2> uav_starts, const Point2& target, int horizon,
                            double step_m) {
  if (uav_starts.empty()) throw std::invalid_argument("reach_ability: no UAV starts");
  const double travel = horizon * step_m;
  if (travel == 0.0) return 0.0;
  double sum = 0.0;
  for (const Point2& start : uav_starts) sum += distance(start, target);
  return travel / (sum / static_cast<double>(uav_starts.size()));
}

}  // namespace uavloc
