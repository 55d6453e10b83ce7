#include "bcgame/conic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "bcgame/errors.hpp"

namespace bcgame {

namespace {

double clamped_sum(const std::vector<Vector>& eigs, double shift) {
  double acc = 0.0;
  for (const auto& ev : eigs) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) acc += std::max(ev(i) - shift, 0.0);
  }
  return acc;
}

double inner(const Profile& a, const Profile& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += linalg::trace_inner(a[k], b[k]);
  return acc;
}

Profile axpy(const Profile& x, double alpha, const Profile& d) {
  Profile out = x;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += alpha * d[k];
  return out;
}

Profile difference(const Profile& a, const Profile& b) {
  Profile out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
  return out;
}

}  // namespace

Projection project_with_shift(const Profile& x, const FeasibleSet& set) {
  if (x.size() != set.dims.size()) throw ValidationError("projection: profile size does not match feasible set");
  std::vector<Vector> eigs;
  std::vector<Matrix> vecs;
  eigs.reserve(x.size());
  vecs.reserve(x.size());
  double top = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (static_cast<std::size_t>(x[k].rows()) != set.dims[k] || x[k].rows() != x[k].cols()) {
      throw ValidationError("projection: slot dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::symmetrize(x[k]));
    eigs.push_back(es.eigenvalues());
    vecs.push_back(es.eigenvectors());
    if (es.eigenvalues().size() > 0) top = std::max(top, es.eigenvalues().maxCoeff());
  }

  double shift = 0.0;
  if (clamped_sum(eigs, 0.0) > set.total_power) {
    double lo = 0.0;
    double hi = top;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (clamped_sum(eigs, mid) > set.total_power ? lo : hi) = mid;
    }
    shift = 0.5 * (lo + hi);
    // Refine on the support found by bisection: the clamped sum is affine there.
    double support_sum = 0.0;
    int support = 0;
    for (const auto& ev : eigs) {
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > shift) {
          support_sum += ev(i);
          ++support;
        }
      }
    }
    if (support > 0) {
      const double exact = (support_sum - set.total_power) / support;
      if (exact >= 0.0 && std::abs(exact - shift) <= 1e-9 * (1.0 + std::abs(shift))) shift = exact;
    }
  }

  Projection out;
  out.shift = shift;
  out.point.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Vector clamped = (eigs[k].array() - shift).cwiseMax(0.0).matrix();
    out.point.push_back(linalg::symmetrize(vecs[k] * clamped.asDiagonal() * vecs[k].transpose()));
  }
  return out;
}

Profile project(const Profile& x, const FeasibleSet& set) { return project_with_shift(x, set).point; }

double min_eigenvalue(const Matrix& x) { return linalg::min_eigenvalue(x); }

AscentResult projected_gradient_ascent(const ProfileObjective& objective, const ProfileGradient& gradient,
                                       const Profile& start, const FeasibleSet& set,
                                       const AscentOptions& options) {
  constexpr double kMinStep = 1e-12;
  constexpr double kMaxStep = 1e12;
  constexpr double kArmijo = 1e-4;
  constexpr std::size_t kMemory = 10;

  AscentResult result;
  Profile x = project(start, set);
  double fx = objective(x);
  Profile g = gradient(x);
  double step = std::clamp(options.initial_step, kMinStep, kMaxStep);
  std::deque<double> history{fx};

  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it;
    Profile unit = difference(project(axpy(x, 1.0, g), set), x);
    result.stationarity = linalg::frobenius_norm(unit);
    if (result.stationarity <= options.tol) {
      result.converged = true;
      break;
    }

    Profile d = difference(project(axpy(x, step, g), set), x);
    const double slope = inner(g, d);
    const double reference = *std::max_element(history.begin(), history.end());
    // Gains below round-off in f cannot be resolved; accept them rather than stall.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(reference));
    double alpha = 1.0;
    Profile trial = axpy(x, alpha, d);
    double ft = objective(trial);
    while (ft < reference + kArmijo * alpha * slope - slack && alpha > 1e-20) {
      alpha *= 0.5;
      trial = axpy(x, alpha, d);
      ft = objective(trial);
    }
    if (alpha <= 1e-20) break;

    Profile g_new = gradient(trial);
    const Profile s = difference(trial, x);
    const Profile y = difference(g_new, g);
    const double sy = -inner(s, y);
    const double ss = inner(s, s);
    step = (sy > 0.0) ? std::clamp(ss / sy, kMinStep, kMaxStep) : kMaxStep;

    x = std::move(trial);
    fx = ft;
    g = std::move(g_new);
    history.push_back(fx);
    if (history.size() > kMemory) history.pop_front();
    if (ss == 0.0) {
      // Stuck on a face where the projected step vanishes; re-check stationarity.
      step = 1.0;
    }
  }
  result.point = std::move(x);
  result.value = fx;
  return result;
}

}  // namespace bcgame
