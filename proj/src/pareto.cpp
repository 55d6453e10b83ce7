#include "bcgame/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "bcgame/duality.hpp"
#include "bcgame/errors.hpp"
#include "bcgame/sampling.hpp"

namespace bcgame {

ParetoWeights::ParetoWeights(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("gamma: empty weight vector");
  double sum = 0.0;
  for (double v : values_) {
    if (!(std::isfinite(v) && v >= 0.0)) throw ValidationError("gamma: Pareto weights must be nonnegative");
    sum += v;
  }
  if (!(sum > 0.0)) throw ValidationError("gamma: Pareto weights must not all be zero");
  for (auto& v : values_) v /= sum;
}

double ParetoKKT::max_residual() const {
  double worst = power_residual;
  for (double v : stationarity) worst = std::max(worst, v);
  for (double v : complementarity) worst = std::max(worst, v);
  return worst;
}

namespace {

void check_gamma(const Game& game, const ParetoWeights& gamma) {
  if (gamma.size() != game.num_users()) throw ValidationError("gamma: length does not match number of users");
}

bool monotone_along(const Order& order, const ParetoWeights& gamma, bool nonincreasing) {
  for (std::size_t pos = 1; pos < order.size(); ++pos) {
    const double prev = gamma[order.user_at(pos - 1)];
    const double cur = gamma[order.user_at(pos)];
    if (nonincreasing ? cur > prev : cur < prev) return false;
  }
  return true;
}

FeasibleSet feasible_set_of(const Game& game) {
  FeasibleSet set{game.budget(), {}};
  for (std::size_t k = 0; k < game.num_users(); ++k) set.dims.push_back(game.dim(k));
  return set;
}

AscentResult ascend(const Game& game, const ParetoWeights& gamma, const Profile& start, const AscentOptions& opts) {
  auto objective = [&](const Profile& q) { return weighted_sum_rate(game, q, gamma.values()); };
  auto gradient = [&](const Profile& q) { return weighted_sum_gradient(game, q, gamma); };
  return projected_gradient_ascent(objective, gradient, start, feasible_set_of(game), opts);
}

[[noreturn]] void fail(const AscentResult& r) {
  std::ostringstream os;
  os << "weighted sum-rate ascent did not converge after " << r.iterations << " iterations (projected gradient norm "
     << r.stationarity << ")";
  throw ConvergenceError(os.str(), r.point, r.stationarity);
}

}  // namespace

Profile weighted_sum_gradient(const Game& game, const Profile& q, const ParetoWeights& gamma) {
  check_gamma(game, gamma);
  Profile g;
  for (std::size_t k = 0; k < game.num_users(); ++k) {
    Matrix acc = gamma[k] * game.own_gradient(q, k);
    for (std::size_t i = 0; i < game.num_users(); ++i) {
      if (i != k && gamma[i] != 0.0 && game.order().precedes(k, i)) acc += gamma[i] * game.cross_gradient(q, i, k);
    }
    g.push_back(linalg::symmetrize(acc));
  }
  return g;
}

ParetoKKT pareto_kkt(const Game& game, const Profile& q, const ParetoWeights& gamma) {
  game.check_profile(q);
  const Profile g = weighted_sum_gradient(game, q, gamma);
  std::vector<bool> active;
  for (const auto& m : q) active.push_back(m.trace() > kInactiveTrace);
  const bool any = std::any_of(active.begin(), active.end(), [](bool a) { return a; });
  ParetoKKT kkt;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (active[k] || !any) kkt.multiplier = std::max(kkt.multiplier, linalg::max_eigenvalue(g[k]));
  }
  kkt.power_residual = std::abs(game.budget() - linalg::total_trace(q));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Matrix m = kkt.multiplier * Matrix::Identity(g[k].rows(), g[k].cols()) - g[k];
    kkt.stationarity.push_back(linalg::negative_part(m).norm());
    kkt.complementarity.push_back(std::abs(linalg::trace_inner(m, q[k])));
  }
  return kkt;
}

ParetoSolution pareto_solve(const Game& game, const ParetoWeights& gamma, const ParetoOptions& options) {
  check_gamma(game, gamma);
  ParetoSolution out;
  if (!game.is_broadcast() && monotone_along(game.order(), gamma, true)) {
    const auto r = ascend(game, gamma, game.uniform_profile(), options.ascent);
    if (!r.converged) fail(r);
    out.profile = r.point;
    out.concave = true;
  } else if (game.is_broadcast() && monotone_along(game.order(), gamma, false)) {
    const Game dual = dual_game(game);
    const auto r = ascend(dual, gamma, dual.uniform_profile(), options.ascent);
    if (!r.converged) fail(r);
    out.profile = mac_to_bc(dual.mac(), r.point, dual.order()).profile;
    out.via_dual = true;
    out.concave = true;
  } else {
    out.warnings.push_back("weights are not ordered for a concave formulation; used multi-start projected gradient");
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < game.num_users(); ++k) dims.push_back(game.dim(k));
    std::optional<AscentResult> best;
    AscentResult last;
    for (int s = 0; s < std::max(1, options.multistart); ++s) {
      Profile start;
      if (s == 0) {
        start = game.uniform_profile();
      } else {
        sampling::Rng rng = sampling::stream(options.seed, static_cast<std::uint64_t>(s));
        start = sampling::random_feasible_profile(rng, dims, game.budget(), true);
      }
      auto r = ascend(game, gamma, start, options.ascent);
      if (r.converged && (!best || r.value > best->value)) best = std::move(r);
      else if (!r.converged) last = std::move(r);
    }
    if (!best) fail(last);
    out.profile = std::move(best->point);
  }
  out.rates = game.rates(out.profile);
  out.value = weighted_sum_rate(game, out.profile, gamma.values());
  out.kkt = pareto_kkt(game, out.profile, gamma);
  return out;
}

Matrix weight_map_matrix(const Game& game, const Profile& q) {
  game.check_profile(q);
  const auto k_users = static_cast<Eigen::Index>(game.num_users());
  Matrix a = Matrix::Zero(k_users, k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto& qk = q[uk];
    a(k, k) = linalg::trace_inner(game.own_gradient(q, uk), qk);
    for (Eigen::Index i = 0; i < k_users; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (i != k && game.order().precedes(uk, ui)) a(k, i) = linalg::trace_inner(game.cross_gradient(q, ui, uk), qk);
    }
  }
  return a;
}

namespace {

constexpr double kSingularDiagonal = 1e-14;

std::vector<std::size_t> active_users(const Profile& q, std::vector<bool>& mask) {
  std::vector<std::size_t> idx;
  mask.clear();
  for (std::size_t k = 0; k < q.size(); ++k) {
    mask.push_back(q[k].trace() > kInactiveTrace);
    if (mask.back()) idx.push_back(k);
  }
  return idx;
}

}  // namespace

WeightMapResult weight_map_gamma_to_r(const Game& game, const ParetoWeights& gamma, const Profile& q) {
  check_gamma(game, gamma);
  WeightMapResult out;
  out.a = weight_map_matrix(game, q);
  const auto idx = active_users(q, out.active);
  const auto k_users = game.num_users();
  out.degenerate = k_users > 1 && idx.size() <= 1;
  if (idx.empty()) throw ValidationError("weight map: no active user");

  Vector g(static_cast<Eigen::Index>(k_users));
  for (std::size_t k = 0; k < k_users; ++k) g(static_cast<Eigen::Index>(k)) = out.active[k] ? gamma[k] : 0.0;
  const Vector ag = out.a * g;
  const auto last = static_cast<Eigen::Index>(idx.back());
  for (auto k : idx) {
    if (out.a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) <= kSingularDiagonal) {
      throw ValidationError("weight map: active user has a vanishing own-gradient term");
    }
  }
  out.eta = ag(last) / out.a(last, last);
  if (!(out.eta > 0.0)) throw ValidationError("weight map: nonpositive eta");

  out.weights.assign(k_users, 0.0);
  for (auto k : idx) {
    const auto e = static_cast<Eigen::Index>(k);
    out.weights[k] = ag(e) / (out.eta * out.a(e, e));
  }
  // An inactive user stays silent as long as r_k lambda_max(grad_k v_k) <= lambda.
  double price = 0.0;
  for (auto k : idx) price = std::max(price, out.weights[k] * linalg::max_eigenvalue(game.own_gradient(q, k)));
  for (std::size_t k = 0; k < k_users; ++k) {
    if (out.active[k]) continue;
    const double top = linalg::max_eigenvalue(game.own_gradient(q, k));
    out.weights[k] = top > 0.0 ? price / top : 0.0;
  }
  out.b = Vector::Zero(static_cast<Eigen::Index>(k_users));
  for (std::size_t k = 0; k < k_users; ++k) {
    const auto e = static_cast<Eigen::Index>(k);
    out.b(e) = out.weights[k] * out.a(e, e);
  }
  out.all_positive = std::all_of(out.weights.begin(), out.weights.end(), [](double w) { return w > 0.0; });
  return out;
}

WeightMapResult weight_map_r_to_gamma(const Game& game, const NoEWeights& r, const Profile& q) {
  if (r.size() != game.num_users()) throw ValidationError("weights: length does not match number of users");
  WeightMapResult out;
  out.a = weight_map_matrix(game, q);
  const auto idx = active_users(q, out.active);
  const auto k_users = game.num_users();
  out.degenerate = k_users > 1 && idx.size() <= 1;
  if (idx.empty()) throw ValidationError("weight map: no active user");

  out.b = Vector::Zero(static_cast<Eigen::Index>(k_users));
  for (std::size_t k = 0; k < k_users; ++k) {
    const auto e = static_cast<Eigen::Index>(k);
    out.b(e) = r[k] * out.a(e, e);
  }
  const auto n = static_cast<Eigen::Index>(idx.size());
  Matrix sub(n, n);
  Vector rhs(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    rhs(x) = out.b(static_cast<Eigen::Index>(idx[x]));
    for (Eigen::Index y = 0; y < n; ++y) {
      sub(x, y) = out.a(static_cast<Eigen::Index>(idx[x]), static_cast<Eigen::Index>(idx[y]));
    }
  }
  Eigen::JacobiSVD<Matrix> svd(sub);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    std::ostringstream os;
    os << "weight map: singular A (condition number " << cond << ")";
    throw ValidationError(os.str());
  }
  const Vector x = sub.fullPivLu().solve(rhs);
  const double sum = x.sum();
  if (!(std::abs(sum) > 0.0)) throw ValidationError("weight map: recovered gamma sums to zero");
  out.eta = 1.0 / sum;
  out.weights.assign(k_users, 0.0);
  for (Eigen::Index e = 0; e < n; ++e) out.weights[idx[e]] = x(e) * out.eta;
  out.all_positive = std::all_of(out.weights.begin(), out.weights.end(), [](double w) { return w >= 0.0; });
  return out;
}

double two_user_weight_ratio(double q1, double q2, double n1, double n2, double ptot, RatioDirection direction,
                             double ratio) {
  if (!(q1 >= 0.0 && q2 >= 0.0 && n1 > 0.0 && n2 > 0.0)) throw ValidationError("two-user map: invalid inputs");
  if (std::abs(q1 + q2 - ptot) > 1e-9 * (1.0 + ptot)) throw ValidationError("two-user map: Q1 + Q2 must equal ptot");
  const double shift = (q1 + n1) * q2 / ((q1 + q2 + n2) * (q1 + n2));
  return direction == RatioDirection::r_to_gamma ? ratio + shift : ratio - shift;
}

std::vector<std::vector<double>> two_user_grid(std::size_t n) {
  if (n < 2) throw ValidationError("gamma grid needs at least two points");
  std::vector<std::vector<double>> grid;
  for (std::size_t i = 0; i < n; ++i) {
    const double g1 = static_cast<double>(i) / static_cast<double>(n - 1);
    grid.push_back({g1, 1.0 - g1});
  }
  return grid;
}

std::vector<FrontierPoint> frontier_sweep(const Game& game, const std::vector<std::vector<double>>& grid,
                                          const ParetoOptions& options, unsigned jobs) {
  std::vector<FrontierPoint> out(grid.size());
  auto solve_point = [&](std::size_t i) {
    FrontierPoint& pt = out[i];
    pt.gamma = grid[i];
    try {
      const ParetoWeights gamma(grid[i]);
      pt.gamma.assign(gamma.values().begin(), gamma.values().end());
      ParetoOptions local = options;
      local.seed = sampling::stream(options.seed, i)();
      auto sol = pareto_solve(game, gamma, local);
      pt.profile = std::move(sol.profile);
      pt.rates = std::move(sol.rates);
      pt.warnings = std::move(sol.warnings);
      try {
        pt.weight_map = weight_map_gamma_to_r(game, gamma, pt.profile);
      } catch (const ValidationError& e) {
        pt.warnings.push_back(e.what());
      }
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j) {
    threads.emplace_back([&, j] {
      for (std::size_t i = j; i < grid.size(); i += jobs) solve_point(i);
    });
  }
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace bcgame
