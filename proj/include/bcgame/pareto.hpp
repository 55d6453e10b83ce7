#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcgame/conic.hpp"
#include "bcgame/solver.hpp"

namespace bcgame {

/// Nonnegative weights on the simplex. The constructor normalizes.
class ParetoWeights {
 public:
  explicit ParetoWeights(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct ParetoOptions {
  /// Starts used when the weighted sum is not known to be concave.
  int multistart = 8;
  std::uint64_t seed = 0;
  AscentOptions ascent;
};

/// KKT residuals of max sum_i gamma_i v_i  s.t. sum Tr Q_k <= P, Q_k >= 0.
struct ParetoKKT {
  double multiplier = 0.0;
  std::vector<double> stationarity;
  std::vector<double> complementarity;
  double power_residual = 0.0;

  double max_residual() const;
};

struct ParetoSolution {
  Profile profile;
  RateTuple rates;
  double value = 0.0;
  /// True when the problem was solved as a concave program in the dual MAC.
  bool via_dual = false;
  /// True when the objective was concave for the given weights and order.
  bool concave = false;
  std::vector<std::string> warnings;
  ParetoKKT kkt;
};

/// sum_i gamma_i d v_i / d Q_k for every k.
Profile weighted_sum_gradient(const Game& game, const Profile& q, const ParetoWeights& gamma);

ParetoKKT pareto_kkt(const Game& game, const Profile& q, const ParetoWeights& gamma);

/// Maximizes sum_i gamma_i v_i over the shared sum-power set. A MAC with weights
/// nonincreasing along its order is concave and solved directly; a BC with weights
/// nondecreasing along its order is solved in its dual MAC and mapped back.
/// Anything else falls back to multi-start projected gradient with a warning.
ParetoSolution pareto_solve(const Game& game, const ParetoWeights& gamma, const ParetoOptions& options = {});

struct WeightMapResult {
  /// A(k, i) = Tr[d v_i / d Q_k Q_k].
  Matrix a;
  /// b_k = r_k Tr[grad_k v_k Q_k].
  Vector b;
  double eta = 0.0;
  /// Recovered r (last active user at one) or gamma (simplex).
  std::vector<double> weights;
  std::vector<bool> active;
  /// At most one active user in a game with several.
  bool degenerate = false;
  bool all_positive = false;
};

/// A(k, i) over all users for profile q.
Matrix weight_map_matrix(const Game& game, const Profile& q);

/// Equilibrium weights r under which a Pareto solution q for gamma is an NoE.
/// Inactive users get the largest weight that keeps them silent.
WeightMapResult weight_map_gamma_to_r(const Game& game, const ParetoWeights& gamma, const Profile& q);

/// Pareto weights for which an NoE q under r is a weighted sum-rate solution.
/// Throws ValidationError if the active block of A is singular.
WeightMapResult weight_map_r_to_gamma(const Game& game, const NoEWeights& r, const Profile& q);

enum class RatioDirection { gamma_to_r, r_to_gamma };

/// gamma_1/gamma_2 = r_1/r_2 + (Q1 + N1) Q2 / ((Q1 + Q2 + N2)(Q1 + N2)) for a scalar
/// two-user degraded BC with Q1 + Q2 = ptot.
double two_user_weight_ratio(double q1, double q2, double n1, double n2, double ptot, RatioDirection direction,
                             double ratio);

struct FrontierPoint {
  std::vector<double> gamma;
  Profile profile;
  RateTuple rates;
  std::optional<WeightMapResult> weight_map;
  std::vector<std::string> warnings;
  /// Set when this point failed; the sweep carries on.
  std::string error;
};

/// gamma = (i/(n-1), 1 - i/(n-1)) for i = 0..n-1.
std::vector<std::vector<double>> two_user_grid(std::size_t n);

/// Solves every grid point. Point i is seeded from (seed, i) so results do not depend on jobs.
std::vector<FrontierPoint> frontier_sweep(const Game& game, const std::vector<std::vector<double>>& grid,
                                          const ParetoOptions& options = {}, unsigned jobs = 1);

}  // namespace bcgame
