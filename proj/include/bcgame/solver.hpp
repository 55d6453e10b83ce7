#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bcgame/rates.hpp"

namespace bcgame {

/// Strictly positive equilibrium weights r.
class NoEWeights {
 public:
  explicit NoEWeights(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }
  /// Rescaled so that the last user's weight is one.
  NoEWeights normalized_last() const;

 private:
  std::vector<double> values_;
};

struct SolveOptions {
  double damping = 0.5;
  int max_iterations = 5000;
  /// Fixed-point tolerance on ||best_response(Q) - Q||_F.
  double tol = 1e-10;
  double inner_tol = 1e-12;
  int inner_max_iterations = 20000;
  /// Random PSD initialization when set; otherwise Q_k = P/(K n) I.
  std::optional<std::uint64_t> seed;
  /// Residual bound the returned certificate must meet.
  double certificate_tol = 1e-6;
};

/// KKT and best-response diagnostics for r_k grad_k v_k - lambda I + M_k = 0,
/// M_k >= 0, Tr[M_k Q_k] = 0, sum_k Tr Q_k = P.
struct EquilibriumCertificate {
  double shadow_price = 0.0;
  std::vector<Matrix> multipliers;
  /// ||negative part of M_k||_F; zero iff M_k is PSD.
  std::vector<double> stationarity;
  std::vector<double> multiplier_min_eig;
  std::vector<double> complementarity;
  double power_residual = 0.0;
  /// max over the coupled feasible set of v_k(B_k, Q_-k) - v_k(Q).
  std::vector<double> best_response_gaps;
  /// max_B f(B, Q, r) - f(Q, Q, r): zero iff Q is a fixed point of the weighted best response.
  double weighted_gap = 0.0;
  std::vector<bool> active;

  double max_kkt_residual() const;
  double max_gap() const;
  bool passes(double tol) const { return max_kkt_residual() <= tol && max_gap() <= tol; }
};

struct NoESolution {
  Profile profile;
  RateTuple rates;
  EquilibriumCertificate certificate;
  int iterations = 0;
  double fixed_point_residual = 0.0;
};

/// Below this trace a player counts as inactive (Q_k treated as zero).
inline constexpr double kInactiveTrace = 1e-8;

/// f(B, Q, r) = sum_i r_i v_i(Q_1, .., Q_{i-1}, B_i, Q_{i+1}, .., Q_K).
double weighted_utility(const Game& game, const Profile& b, const Profile& q, const NoEWeights& r);

/// argmax_B f(B, Q, r) over sum Tr B_i <= P, B_i >= 0, by projected gradient ascent.
/// Throws ConvergenceError carrying the last iterate when the inner solve stalls.
Profile best_response(const Game& game, const Profile& q, const NoEWeights& r, const SolveOptions& options = {},
                      const Profile* warm_start = nullptr);

/// Same maximizer in closed form: each B_i water-fills at price lambda / r_i,
/// with the common lambda found by bisection so the budget is met.
Profile best_response_waterfill(const Game& game, const Profile& q, const NoEWeights& r);

/// max log|Z + G B G^T| - log|Z| subject to B >= 0, Tr B <= power.
Matrix waterfill(const PlayerView& view, double power);
/// max log|Z + G B G^T| - log|Z| - price * Tr B over B >= 0.
Matrix waterfill_at_price(const PlayerView& view, double price);

/// Damped iteration Q <- (1 - theta) Q + theta best_response(Q).
NoESolution solve_noe(const Game& game, const NoEWeights& r, const SolveOptions& options = {});

/// Report-based: never throws for a well-formed feasible profile.
EquilibriumCertificate certify(const Game& game, const Profile& q, const NoEWeights& r);

struct GNECertificate {
  /// Per-player multipliers lambda_k = lambda_max(grad_k v_k).
  std::vector<double> player_prices;
  /// r_k = 1 / lambda_k: the weights under which the GNE is normalized with unit price.
  std::vector<double> rescaled_weights;
  EquilibriumCertificate certificate;
};

/// Certifies Q as a GNE by rescaling weights to unit shadow price.
GNECertificate certify_gne(const Game& game, const Profile& q);

/// Unilateral gap of player k against budget P - sum_{i != k} Tr Q_i.
double unilateral_gap(const Game& game, const Profile& q, std::size_t k, double budget_for_k);

}  // namespace bcgame
