#pragma once

#include <string>
#include <vector>

#include "bcgame/solver.hpp"

namespace bcgame {

/// Positive per-user scaling for the constraint sum Tr Q_k / alpha_k <= sum P_k / alpha_k.
class ScalingWeights {
 public:
  explicit ScalingWeights(std::vector<double> values);
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct DualityReport {
  Profile source;
  Profile target;
  /// |v_k(source) - u_k(target)| per user.
  std::vector<double> rate_deltas;
  /// |sum Tr source - sum Tr target|.
  double power_delta = 0.0;
  /// Smallest eigenvalue of each target covariance.
  std::vector<double> min_eigenvalues;
  /// Users whose closed-form transform needed the scalar rate-matching fallback.
  std::vector<std::size_t> fallback_users;

  double max_rate_delta() const;
};

struct BCDual {
  BCChannel channel;
  Order order;
  Profile profile;
  DualityReport report;
};

struct MACDual {
  MACChannel channel;
  Order order;
  Profile profile;
  DualityReport report;
};

/// Sum-power MAC covariances to dual BC covariances with identical per-user
/// rates. The dual BC uses channels H_k^T, white noise N0, and the reversed
/// interference order. Throws VerificationError if rates drift beyond tol.
BCDual mac_to_bc(const MACChannel& mac, const Profile& q, const Order& order, double tol = 1e-8);

/// Inverse direction. Colored-noise channels are whitened first.
MACDual bc_to_mac(const BCChannel& bc, const Profile& s, const Order& order, double tol = 1e-8);

/// The dual game (channel transposes, reversed order, same budget).
Game dual_game(const Game& game);

struct Prop5Report {
  /// P_k = Tr Q*_k.
  std::vector<double> induced_powers;
  /// Gaps in the individual-power game with the induced powers.
  std::vector<double> nep_gaps;
  /// Gaps in the coupled sum-power game.
  std::vector<double> gnep_gaps;
  double slack = 0.0;

  double max_gap() const;
  bool holds(double tol) const { return max_gap() <= tol; }
};

/// NE of the individual-power game induced by Q* and GNE of the coupled game.
Prop5Report verify_prop5(const Game& game, const Profile& q);

struct Prop6Entry {
  std::vector<double> alpha;
  bool skipped = false;
  std::string note;
  /// Unilateral gaps under the scaled coupled constraint.
  std::vector<double> gaps;
};

struct Prop6Report {
  std::vector<Prop6Entry> entries;
  double max_gap() const;
  bool holds(double tol) const { return max_gap() <= tol; }
};

/// Checks that Q* remains a GNE for each scaled coupled constraint.
Prop6Report verify_prop6(const Game& game, const Profile& q, const std::vector<ScalingWeights>& alphas,
                         const std::vector<double>& powers, double feasibility_tol = 1e-9);

/// Nash equilibrium of the individual-power game Tr Q_k <= P_k by round-robin
/// water-filling best responses.
Profile solve_individual_ne(const Game& game, const std::vector<double>& powers, int max_sweeps = 1000,
                            double tol = 1e-13);

}  // namespace bcgame
