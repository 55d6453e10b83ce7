#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bcgame/solver.hpp"

namespace bcgame {

enum class PenaltyUpdate {
  /// Damped exact best responses of v_k - T_k (piecewise water-filling).
  best_response,
  /// Projected subgradient steps of size step / sqrt(t), t = 1, 2, ..; runs to max_iterations
  /// unless the residual drops below tol first, and never throws ConvergenceError.
  subgradient,
};

struct PenaltyConfig {
  double shadow_price = 0.0;
  std::vector<double> weights;
  int max_iterations = 1000;
  double damping = 0.5;
  double tol = 1e-10;
  /// Update every player from the same iterate instead of round-robin.
  bool simultaneous = false;
  PenaltyUpdate update = PenaltyUpdate::best_response;
  double step = 1.0;

  /// Throws ValidationError for a negative price, nonpositive weights or bad limits.
  void validate(std::size_t num_users) const;
};

/// T_k = (lambda / r_k) max(0, sum_i Tr Q_i - P).
std::vector<double> penalty_value(const PenaltyConfig& cfg, const Profile& q, double total_power);

struct TrajectoryRow {
  int iteration = 0;
  std::vector<double> traces;
  std::vector<double> utilities;
  std::vector<double> penalties;
};

struct PenaltyResult {
  Profile profile;
  std::vector<TrajectoryRow> trajectory;
  int iterations = 0;
  double residual = 0.0;
  /// sum Tr Q_k <= P up to 1e-9 relative.
  bool feasible = false;
  std::optional<double> distance_to_reference;
  std::vector<std::string> notes;
};

/// Each player maximizes v_k - T_k subject only to Q_k >= 0 and Tr Q_k <= P.
/// Throws ConvergenceError with the residual tail when the update does not settle.
PenaltyResult run_penalty_game(const Game& game, const PenaltyConfig& cfg, const Profile* reference = nullptr,
                               const Profile* start = nullptr);

/// Best response of player k to the others in the penalized game.
Matrix penalty_best_response(const Game& game, const PenaltyConfig& cfg, const Profile& q, std::size_t k);

/// iteration, tr_1..tr_K, utility_1..utility_K, penalty_1..penalty_K.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

}  // namespace bcgame
