#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bcgame/linalg.hpp"

namespace bcgame {

/// { (Q_1..Q_K) : Q_k >= 0, sum_k Tr Q_k <= total_power }.
struct FeasibleSet {
  double total_power = 0.0;
  std::vector<std::size_t> dims;
};

struct Projection {
  Profile point;
  /// Common eigenvalue shift; zero when the PSD clamp alone is feasible.
  double shift = 0.0;
};

/// Frobenius projection onto the feasible set. Each X_k is eigendecomposed
/// and every eigenvalue is mapped to max(lambda - s, 0) with a single s >= 0
/// shared across slots, chosen so the clamped trace sum equals the budget.
Projection project_with_shift(const Profile& x, const FeasibleSet& set);
Profile project(const Profile& x, const FeasibleSet& set);

double min_eigenvalue(const Matrix& x);

struct AscentOptions {
  int max_iterations = 20000;
  /// Stop when ||proj(Q + grad) - Q||_F falls below this.
  double tol = 1e-12;
  double initial_step = 1.0;
};

struct AscentResult {
  Profile point;
  double value = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ProfileObjective = std::function<double(const Profile&)>;
using ProfileGradient = std::function<Profile(const Profile&)>;

/// Maximizes a smooth function over the feasible set by spectral projected
/// gradient steps with a nonmonotone Armijo backtracking line search.
AscentResult projected_gradient_ascent(const ProfileObjective& objective, const ProfileGradient& gradient,
                                       const Profile& start, const FeasibleSet& set,
                                       const AscentOptions& options = {});

}  // namespace bcgame
