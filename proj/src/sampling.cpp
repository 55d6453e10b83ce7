#include "bcgame/sampling.hpp"

namespace bcgame::sampling {

Rng stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
  }
  return g;
}

Matrix random_psd(Rng& rng, std::size_t n) {
  const Matrix g = random_gaussian(rng, n, n);
  return linalg::symmetrize(g * g.transpose());
}

Profile random_feasible_profile(Rng& rng, const std::vector<std::size_t>& dims, double power, bool saturate) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Profile q;
  q.reserve(dims.size());
  double total = 0.0;
  for (auto n : dims) {
    // Occasional rank-deficient and zero slots exercise boundary cases.
    Matrix m = random_psd(rng, n);
    if (n > 1 && unit(rng) < 0.2) {
      const Matrix v = random_gaussian(rng, n, 1);
      m = v * v.transpose();
    }
    m *= unit(rng);
    total += m.trace();
    q.push_back(std::move(m));
  }
  if (total <= 0.0) return q;
  const double fraction = saturate ? 1.0 : 1.0 - unit(rng);
  for (auto& m : q) m *= fraction * power / total;
  return q;
}

}  // namespace bcgame::sampling
