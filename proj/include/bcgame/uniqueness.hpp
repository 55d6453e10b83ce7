#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcgame/solver.hpp"

namespace bcgame {

/// g(Q, r) = (r_1 grad_1 v_1, ..., r_K grad_K v_K).
std::vector<Matrix> pseudo_gradient(const Game& game, const Profile& q, const NoEWeights& r);

/// Tr[(A - B)^T g(B, r) + (B - A)^T g(A, r)], summed over players.
/// Positive for every distinct feasible pair iff the weighted sum is DSC.
double dsc_gap(const Game& game, const Profile& a, const Profile& b, const NoEWeights& r);

/// Abel partial sums behind the DSC gap. With t_k = Tr[(B_k - A_k)(grad_k v_k(A) - grad_k v_k(B))],
/// entry n is sum of t over the first n+1 users of the interference order, so that
/// dsc_gap = sum_n (r_{u_n} - r_{u_{n+1}}) T_n + r_{u_K} T_K.
std::vector<double> dsc_partial_sums(const Game& game, const Profile& a, const Profile& b);

/// Recombines partial sums with weights taken along the interference order.
double dsc_from_partial_sums(const Game& game, std::span<const double> partial_sums, const NoEWeights& r);

struct DSCReport {
  enum class Verdict { no_violation, counterexample };

  double min_gap = 0.0;
  Profile argmin_first;
  Profile argmin_second;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::no_violation;

  /// Sampling can only support the sufficient condition; a violation leaves uniqueness open.
  std::string conclusion() const;
};

/// Randomized probe of the DSC condition over seeded Wishart-style feasible pairs.
/// Sample i draws from its own stream seeded by (seed, i), so results do not depend on jobs.
DSCReport sample_dsc(const Game& game, const NoEWeights& r, std::size_t num_samples, std::uint64_t seed,
                     unsigned jobs = 1);

/// Tr{ sum_k (A_k - B_k) [ (sum_{l<=k} B_l)^{-1} - (sum_{l<=k} A_l)^{-1} ] }, nonnegative
/// for PSD tuples with A_1, B_1 positive definite.
double trace_inequality(std::span<const Matrix> a, std::span<const Matrix> b);

/// Tr[(A1 - B1)(B1^{-1} - A1^{-1}) + 4 (A2 - B2){(w B1 + B2)^{-1} - (w A1 + A2)^{-1}}] for w > 0.
double trace_inequality_tight2(const Matrix& a1, const Matrix& b1, const Matrix& a2, const Matrix& b2, double w);

}  // namespace bcgame
