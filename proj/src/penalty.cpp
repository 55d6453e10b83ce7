#include "bcgame/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "bcgame/conic.hpp"
#include "bcgame/errors.hpp"

namespace bcgame {

void PenaltyConfig::validate(std::size_t num_users) const {
  if (!(std::isfinite(shadow_price) && shadow_price >= 0.0)) throw ValidationError("penalty: shadow price must be >= 0");
  if (weights.size() != num_users) throw ValidationError("penalty: one weight per user required");
  for (double w : weights) {
    if (!(std::isfinite(w) && w > 0.0)) throw ValidationError("penalty: weights must be strictly positive");
  }
  if (max_iterations < 1) throw ValidationError("penalty: max_iterations must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw ValidationError("penalty: damping must lie in (0, 1]");
  if (!(step > 0.0)) throw ValidationError("penalty: step must be positive");
}

std::vector<double> penalty_value(const PenaltyConfig& cfg, const Profile& q, double total_power) {
  const double violation = std::max(0.0, linalg::total_trace(q) - total_power);
  std::vector<double> out;
  for (double w : cfg.weights) out.push_back(cfg.shadow_price / w * violation);
  return out;
}

Matrix penalty_best_response(const Game& game, const PenaltyConfig& cfg, const Profile& q, std::size_t k) {
  const double cap = game.budget();
  const auto view = game.player_view(q, k);
  const double price = cfg.shadow_price / cfg.weights[k];
  if (price <= 0.0) return waterfill(view, cap);
  // Utility in the own power t is concave: free up to the residual budget, then taxed at `price`.
  const double residual = cap - (linalg::total_trace(q) - q[k].trace());
  const double at_price = waterfill_at_price(view, price).trace();
  const double power = std::clamp(std::max(residual, at_price), 0.0, cap);
  return waterfill(view, power);
}

namespace {

TrajectoryRow record(const Game& game, const PenaltyConfig& cfg, const Profile& q, int iteration) {
  TrajectoryRow row;
  row.iteration = iteration;
  for (const auto& m : q) row.traces.push_back(m.trace());
  row.utilities = game.rates(q);
  row.penalties = penalty_value(cfg, q, game.budget());
  return row;
}

Matrix subgradient_step(const Game& game, const PenaltyConfig& cfg, const Profile& q, std::size_t k, double step) {
  Matrix g = game.own_gradient(q, k);
  if (linalg::total_trace(q) > game.budget()) {
    g -= (cfg.shadow_price / cfg.weights[k]) * Matrix::Identity(g.rows(), g.cols());
  }
  const FeasibleSet slot{game.budget(), {game.dim(k)}};
  return project(Profile{q[k] + step * g}, slot).front();
}

}  // namespace

PenaltyResult run_penalty_game(const Game& game, const PenaltyConfig& cfg, const Profile* reference,
                               const Profile* start) {
  cfg.validate(game.num_users());
  Profile q = start ? *start : game.zero_profile();
  game.check_profile(q);
  const auto k_users = game.num_users();
  const double theta = cfg.damping;

  PenaltyResult out;
  out.trajectory.push_back(record(game, cfg, q, 0));
  std::deque<double> tail;
  bool converged = false;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const Profile before = q;
    const double step = cfg.step / std::sqrt(static_cast<double>(it));
    auto update = [&](const Profile& seen, std::size_t k) {
      if (cfg.update == PenaltyUpdate::subgradient) return subgradient_step(game, cfg, seen, k, step);
      return Matrix((1.0 - theta) * seen[k] + theta * penalty_best_response(game, cfg, seen, k));
    };
    if (cfg.simultaneous) {
      Profile next(k_users);
      for (std::size_t k = 0; k < k_users; ++k) next[k] = update(before, k);
      q = std::move(next);
    } else {
      for (std::size_t pos = 0; pos < k_users; ++pos) {
        const auto k = game.order().user_at(pos);
        q[k] = update(q, k);
      }
    }
    out.residual = linalg::frobenius_distance(q, before);
    out.iterations = it;
    out.trajectory.push_back(record(game, cfg, q, it));
    tail.push_back(out.residual);
    if (tail.size() > 5) tail.pop_front();
    if (out.residual <= cfg.tol) {
      converged = true;
      break;
    }
  }
  // Diminishing steps never freeze exactly; the subgradient run is a fixed budget.
  const bool fixed_budget = cfg.update == PenaltyUpdate::subgradient;
  if (!converged && !fixed_budget) {
    std::ostringstream os;
    os << "penalty dynamics did not settle after " << cfg.max_iterations << " iterations; residual tail:";
    for (double t : tail) os << ' ' << t;
    throw ConvergenceError(os.str(), q, out.residual);
  }
  const double total = linalg::total_trace(q);
  out.feasible = total <= game.budget() * (1.0 + 1e-9) + 1e-12;
  if (cfg.shadow_price == 0.0) {
    out.notes.push_back("zero shadow price: players saturate the individual cap; not an equilibrium of the coupled game");
  }
  if (!converged && fixed_budget) out.notes.push_back("subgradient run stopped at the iteration limit");
  if (!out.feasible) out.notes.push_back("limit violates the shared power constraint");
  if (reference) out.distance_to_reference = linalg::frobenius_distance(q, *reference);
  out.profile = std::move(q);
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  const std::size_t k_users = rows.empty() ? 0 : rows.front().traces.size();
  out << "iteration";
  for (std::size_t k = 1; k <= k_users; ++k) out << ",tr_" << k;
  for (std::size_t k = 1; k <= k_users; ++k) out << ",utility_" << k;
  for (std::size_t k = 1; k <= k_users; ++k) out << ",penalty_" << k;
  out << '\n';
  out.precision(12);
  for (const auto& row : rows) {
    out << row.iteration;
    for (double v : row.traces) out << ',' << v;
    for (double v : row.utilities) out << ',' << v;
    for (double v : row.penalties) out << ',' << v;
    out << '\n';
  }
}

}  // namespace bcgame
