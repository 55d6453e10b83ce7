#include "bcgame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "bcgame/conic.hpp"
#include "bcgame/errors.hpp"
#include "bcgame/sampling.hpp"

namespace bcgame {

NoEWeights::NoEWeights(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("weights: empty weight vector");
  for (double v : values_) {
    if (!(std::isfinite(v) && v > 0.0)) throw ValidationError("weights: NoE weights must be strictly positive");
  }
}

NoEWeights NoEWeights::normalized_last() const {
  std::vector<double> out = values_;
  const double last = out.back();
  for (auto& v : out) v /= last;
  return NoEWeights(std::move(out));
}

double EquilibriumCertificate::max_kkt_residual() const {
  double worst = power_residual;
  for (double v : stationarity) worst = std::max(worst, v);
  for (double v : complementarity) worst = std::max(worst, v);
  return worst;
}

double EquilibriumCertificate::max_gap() const {
  double worst = weighted_gap;
  for (double v : best_response_gaps) worst = std::max(worst, v);
  return worst;
}

namespace {

/// Whitened channel spectrum: F = L^{-1} G with Z = L L^T, F^T F = V diag(s) V^T.
struct Spectrum {
  Vector gains;
  Matrix basis;
};

Spectrum whitened_spectrum(const PlayerView& view) {
  Eigen::LLT<Matrix> llt(view.interference);
  if (llt.info() != Eigen::Success) throw ValidationError("interference covariance not positive definite");
  const Matrix f = llt.matrixL().solve(view.gain);
  Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::symmetrize(f.transpose() * f));
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix assemble(const Spectrum& spec, const Vector& powers) {
  return linalg::symmetrize(spec.basis * powers.asDiagonal() * spec.basis.transpose());
}

double gain_of(const PlayerView& view, const Matrix& b) {
  const double v = linalg::logdet_spd(view.interference + view.gain * b * view.gain.transpose()) -
                   linalg::logdet_spd(view.interference);
  return std::max(v, 0.0);
}

constexpr double kNullGain = 1e-14;

void check_weights(const Game& game, const NoEWeights& r) {
  if (r.size() != game.num_users()) throw ValidationError("weights: length does not match number of users");
}

FeasibleSet feasible_set_of(const Game& game, double power) {
  FeasibleSet set{power, {}};
  for (std::size_t k = 0; k < game.num_users(); ++k) set.dims.push_back(game.dim(k));
  return set;
}

}  // namespace

Matrix waterfill(const PlayerView& view, double power) {
  const auto m = view.gain.cols();
  if (power <= 0.0) return Matrix::Zero(m, m);
  const Spectrum spec = whitened_spectrum(view);
  const double scale = std::max(1.0, spec.gains.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> usable;
  for (Eigen::Index j = spec.gains.size() - 1; j >= 0; --j) {
    if (spec.gains(j) > kNullGain * scale) usable.push_back(j);
  }
  Vector powers = Vector::Zero(m);
  if (usable.empty()) return Matrix::Zero(m, m);
  // usable is sorted by decreasing gain; drop weak modes until the level clears them all.
  std::size_t count = usable.size();
  double level = 0.0;
  while (count > 0) {
    double inv_sum = 0.0;
    for (std::size_t a = 0; a < count; ++a) inv_sum += 1.0 / spec.gains(usable[a]);
    level = (power + inv_sum) / static_cast<double>(count);
    if (level > 1.0 / spec.gains(usable[count - 1])) break;
    --count;
  }
  for (std::size_t a = 0; a < count; ++a) {
    const auto j = usable[a];
    powers(j) = std::max(level - 1.0 / spec.gains(j), 0.0);
  }
  return assemble(spec, powers);
}

Matrix waterfill_at_price(const PlayerView& view, double price) {
  if (!(price > 0.0)) throw ValidationError("waterfill: price must be positive");
  const auto m = view.gain.cols();
  const Spectrum spec = whitened_spectrum(view);
  const double scale = std::max(1.0, spec.gains.cwiseAbs().maxCoeff());
  const double level = 1.0 / price;
  Vector powers = Vector::Zero(m);
  for (Eigen::Index j = 0; j < spec.gains.size(); ++j) {
    if (spec.gains(j) > kNullGain * scale) powers(j) = std::max(level - 1.0 / spec.gains(j), 0.0);
  }
  return assemble(spec, powers);
}

double weighted_utility(const Game& game, const Profile& b, const Profile& q, const NoEWeights& r) {
  check_weights(game, r);
  if (b.size() != game.num_users() || q.size() != game.num_users()) {
    throw ValidationError("weighted utility: profile size mismatch");
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k].rows() != q[k].rows() || b[k].cols() != q[k].cols()) {
      throw ValidationError("weighted utility: dimension mismatch");
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < game.num_users(); ++i) {
    // Player i's utility depends on its own slot and on users before it, never on later slots.
    acc += r[i] * gain_of(game.player_view(q, i), b[i]);
  }
  return acc;
}

Profile best_response(const Game& game, const Profile& q, const NoEWeights& r, const SolveOptions& options,
                      const Profile* warm_start) {
  check_weights(game, r);
  std::vector<PlayerView> views;
  std::vector<double> base;
  for (std::size_t i = 0; i < game.num_users(); ++i) {
    views.push_back(game.player_view(q, i));
    base.push_back(linalg::logdet_spd(views.back().interference));
  }
  auto objective = [&](const Profile& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& v = views[i];
      acc += r[i] * (linalg::logdet_spd(v.interference + v.gain * b[i] * v.gain.transpose()) - base[i]);
    }
    return acc;
  };
  auto gradient = [&](const Profile& b) {
    Profile g;
    g.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& v = views[i];
      const Matrix phi = linalg::inverse_spd(v.interference + v.gain * b[i] * v.gain.transpose());
      g.push_back(r[i] * linalg::symmetrize(v.gain.transpose() * phi * v.gain));
    }
    return g;
  };
  AscentOptions ascent;
  ascent.tol = options.inner_tol;
  ascent.max_iterations = options.inner_max_iterations;
  const Profile& start = warm_start ? *warm_start : q;
  auto result = projected_gradient_ascent(objective, gradient, start, feasible_set_of(game, game.budget()), ascent);
  if (!result.converged) {
    std::ostringstream os;
    os << "best response did not converge after " << result.iterations
       << " iterations (projected gradient norm " << result.stationarity << ")";
    throw ConvergenceError(os.str(), std::move(result.point), result.stationarity);
  }
  return std::move(result.point);
}

Profile best_response_waterfill(const Game& game, const Profile& q, const NoEWeights& r) {
  check_weights(game, r);
  const auto k_users = game.num_users();
  std::vector<PlayerView> views;
  double top = 0.0;
  for (std::size_t i = 0; i < k_users; ++i) {
    views.push_back(game.player_view(q, i));
    const Matrix g0 = views.back().gain.transpose() * linalg::inverse_spd(views.back().interference) *
                      views.back().gain;
    top = std::max(top, r[i] * linalg::max_eigenvalue(g0));
  }
  if (top <= 0.0) return game.zero_profile();

  auto allocate = [&](double price) {
    Profile b;
    for (std::size_t i = 0; i < k_users; ++i) b.push_back(waterfill_at_price(views[i], price / r[i]));
    return b;
  };
  // At price >= top nobody transmits; shrink the price until the budget is exceeded.
  double hi = top;
  double lo = top;
  while (linalg::total_trace(allocate(lo)) < game.budget()) lo *= 0.5;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (linalg::total_trace(allocate(mid)) > game.budget() ? lo : hi) = mid;
  }
  return allocate(hi);
}

NoESolution solve_noe(const Game& game, const NoEWeights& r, const SolveOptions& options) {
  check_weights(game, r);
  if (!(options.damping > 0.0 && options.damping <= 1.0)) throw ValidationError("damping must lie in (0, 1]");

  Profile q;
  if (options.seed) {
    sampling::Rng rng(*options.seed);
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < game.num_users(); ++k) dims.push_back(game.dim(k));
    q = sampling::random_feasible_profile(rng, dims, game.budget());
  } else {
    q = game.uniform_profile();
  }

  const double theta = options.damping;
  std::deque<double> tail;
  Profile br = best_response(game, q, r, options);
  NoESolution out;
  bool converged = false;
  for (int it = 0; it <= options.max_iterations; ++it) {
    const double residual = linalg::frobenius_distance(br, q);
    out.iterations = it;
    out.fixed_point_residual = residual;
    tail.push_back(residual);
    if (tail.size() > 5) tail.pop_front();
    if (residual <= options.tol) {
      converged = true;
      break;
    }
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = (1.0 - theta) * q[k] + theta * br[k];
    br = best_response(game, q, r, options, &br);
  }
  if (!converged) {
    std::ostringstream os;
    os << "NoE fixed-point iteration did not converge after " << options.max_iterations
       << " iterations; residual tail:";
    for (double t : tail) os << ' ' << t;
    throw ConvergenceError(os.str(), q, out.fixed_point_residual);
  }
  // The best response at the fixed point is feasible by construction; report it.
  out.profile = std::move(br);
  out.rates = game.rates(out.profile);
  out.certificate = certify(game, out.profile, r);
  if (!out.certificate.passes(options.certificate_tol)) {
    std::ostringstream os;
    os << "NoE certificate failed: KKT residual " << out.certificate.max_kkt_residual() << ", gap "
       << out.certificate.max_gap();
    throw VerificationError(os.str());
  }
  return out;
}

EquilibriumCertificate certify(const Game& game, const Profile& q, const NoEWeights& r) {
  check_weights(game, r);
  game.check_profile(q);
  const auto k_users = game.num_users();
  EquilibriumCertificate cert;
  std::vector<Matrix> weighted;
  for (std::size_t k = 0; k < k_users; ++k) {
    weighted.push_back(r[k] * game.own_gradient(q, k));
    cert.active.push_back(q[k].trace() > kInactiveTrace);
  }
  const bool any_active = std::any_of(cert.active.begin(), cert.active.end(), [](bool a) { return a; });
  double price = 0.0;
  for (std::size_t k = 0; k < k_users; ++k) {
    if (cert.active[k] || !any_active) price = std::max(price, linalg::max_eigenvalue(weighted[k]));
  }
  cert.shadow_price = price;

  const double total = linalg::total_trace(q);
  cert.power_residual = std::abs(game.budget() - total);
  for (std::size_t k = 0; k < k_users; ++k) {
    const auto n = weighted[k].rows();
    Matrix m = price * Matrix::Identity(n, n) - weighted[k];
    cert.stationarity.push_back(linalg::negative_part(m).norm());
    cert.multiplier_min_eig.push_back(linalg::min_eigenvalue(m));
    cert.complementarity.push_back(cert.active[k] ? std::abs(linalg::trace_inner(m, q[k])) : 0.0);
    cert.multipliers.push_back(std::move(m));
    const double budget_k = std::max(0.0, game.budget() - (total - q[k].trace()));
    cert.best_response_gaps.push_back(unilateral_gap(game, q, k, budget_k));
  }
  const Profile br = best_response_waterfill(game, q, r);
  cert.weighted_gap = std::max(0.0, weighted_utility(game, br, q, r) - weighted_utility(game, q, q, r));
  return cert;
}

GNECertificate certify_gne(const Game& game, const Profile& q) {
  game.check_profile(q);
  GNECertificate out;
  for (std::size_t k = 0; k < game.num_users(); ++k) {
    const double lam = linalg::max_eigenvalue(game.own_gradient(q, k));
    if (!(lam > 0.0)) throw ValidationError("certify_gne: player has no usable channel");
    out.player_prices.push_back(lam);
    out.rescaled_weights.push_back(1.0 / lam);
  }
  out.certificate = certify(game, q, NoEWeights(out.rescaled_weights));
  return out;
}

double unilateral_gap(const Game& game, const Profile& q, std::size_t k, double budget_for_k) {
  const auto view = game.player_view(q, k);
  const Matrix best = waterfill(view, budget_for_k);
  return std::max(0.0, gain_of(view, best) - gain_of(view, q[k]));
}

}  // namespace bcgame
