#include "bcgame/uniqueness.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "bcgame/errors.hpp"
#include "bcgame/sampling.hpp"

namespace bcgame {

std::vector<Matrix> pseudo_gradient(const Game& game, const Profile& q, const NoEWeights& r) {
  if (r.size() != game.num_users()) throw ValidationError("weights: length does not match number of users");
  game.check_profile(q);
  std::vector<Matrix> g;
  g.reserve(game.num_users());
  for (std::size_t k = 0; k < game.num_users(); ++k) g.push_back(r[k] * game.own_gradient(q, k));
  return g;
}

namespace {

std::vector<double> player_terms(const Game& game, const Profile& a, const Profile& b) {
  std::vector<double> t(game.num_users());
  for (std::size_t k = 0; k < game.num_users(); ++k) {
    t[k] = linalg::trace_inner(b[k] - a[k], game.own_gradient(a, k) - game.own_gradient(b, k));
  }
  return t;
}

}  // namespace

double dsc_gap(const Game& game, const Profile& a, const Profile& b, const NoEWeights& r) {
  const auto ga = pseudo_gradient(game, a, r);
  const auto gb = pseudo_gradient(game, b, r);
  double acc = 0.0;
  for (std::size_t k = 0; k < ga.size(); ++k) {
    acc += linalg::trace_inner(a[k] - b[k], gb[k]) + linalg::trace_inner(b[k] - a[k], ga[k]);
  }
  return acc;
}

std::vector<double> dsc_partial_sums(const Game& game, const Profile& a, const Profile& b) {
  game.check_profile(a);
  game.check_profile(b);
  const auto t = player_terms(game, a, b);
  std::vector<double> partial(t.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    acc += t[game.order().user_at(n)];
    partial[n] = acc;
  }
  return partial;
}

double dsc_from_partial_sums(const Game& game, std::span<const double> partial_sums, const NoEWeights& r) {
  const auto& order = game.order();
  const auto k_users = partial_sums.size();
  double acc = 0.0;
  for (std::size_t n = 0; n + 1 < k_users; ++n) {
    acc += (r[order.user_at(n)] - r[order.user_at(n + 1)]) * partial_sums[n];
  }
  if (k_users > 0) acc += r[order.user_at(k_users - 1)] * partial_sums[k_users - 1];
  return acc;
}

std::string DSCReport::conclusion() const {
  if (verdict == Verdict::no_violation) {
    return "no violation in " + std::to_string(samples) + " sampled pairs; sufficient condition for a unique NoE supported";
  }
  return "inconclusive: DSC violated on a sampled pair, uniqueness neither implied nor refuted";
}

DSCReport sample_dsc(const Game& game, const NoEWeights& r, std::size_t num_samples, std::uint64_t seed,
                     unsigned jobs) {
  if (r.size() != game.num_users()) throw ValidationError("weights: length does not match number of users");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < game.num_users(); ++k) dims.push_back(game.dim(k));

  struct Best {
    double gap = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
    Profile a, b;
  };
  auto draw = [&](std::size_t i, Profile& a, Profile& b) {
    sampling::Rng rng = sampling::stream(seed, i);
    a = sampling::random_feasible_profile(rng, dims, game.budget());
    b = sampling::random_feasible_profile(rng, dims, game.budget());
  };
  auto worker = [&](std::size_t begin, std::size_t end, Best& best) {
    Profile a, b;
    for (std::size_t i = begin; i < end; ++i) {
      draw(i, a, b);
      if (linalg::frobenius_distance(a, b) == 0.0) continue;
      const double gap = dsc_gap(game, a, b, r);
      if (gap < best.gap) best = {gap, i, a, b};
    }
  };

  jobs = std::max(1u, jobs);
  std::vector<Best> partial(jobs);
  std::vector<std::thread> threads;
  const std::size_t chunk = (num_samples + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t begin = std::min(num_samples, j * chunk);
    const std::size_t end = std::min(num_samples, begin + chunk);
    threads.emplace_back(worker, begin, end, std::ref(partial[j]));
  }
  for (auto& t : threads) t.join();

  // Ties resolve to the lowest sample index so the report is independent of jobs.
  Best best;
  for (auto& p : partial) {
    if (p.gap < best.gap || (p.gap == best.gap && p.index < best.index)) best = std::move(p);
  }
  DSCReport report;
  report.samples = num_samples;
  report.seed = seed;
  report.min_gap = best.gap;
  report.argmin_first = std::move(best.a);
  report.argmin_second = std::move(best.b);
  report.verdict = report.min_gap > 0.0 ? DSCReport::Verdict::no_violation : DSCReport::Verdict::counterexample;
  return report;
}

double trace_inequality(std::span<const Matrix> a, std::span<const Matrix> b) {
  if (a.size() != b.size() || a.empty()) throw ValidationError("trace inequality: tuples must be non-empty and equal length");
  Matrix sum_a = Matrix::Zero(a[0].rows(), a[0].cols());
  Matrix sum_b = sum_a;
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum_a += a[k];
    sum_b += b[k];
    Matrix inv_a, inv_b;
    try {
      inv_a = linalg::inverse_spd(sum_a);
      inv_b = linalg::inverse_spd(sum_b);
    } catch (const std::domain_error&) {
      throw ValidationError("trace inequality: singular leading sum");
    }
    acc += linalg::trace_inner(a[k] - b[k], inv_b - inv_a);
  }
  return acc;
}

double trace_inequality_tight2(const Matrix& a1, const Matrix& b1, const Matrix& a2, const Matrix& b2, double w) {
  if (!(w > 0.0)) throw ValidationError("trace inequality: w must be positive");
  try {
    const double first = linalg::trace_inner(a1 - b1, linalg::inverse_spd(b1) - linalg::inverse_spd(a1));
    const double second = linalg::trace_inner(
        a2 - b2, linalg::inverse_spd(w * b1 + b2) - linalg::inverse_spd(w * a1 + a2));
    return first + 4.0 * second;
  } catch (const std::domain_error&) {
    throw ValidationError("trace inequality: singular leading sum");
  }
}

}  // namespace bcgame
