#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bcgame/linalg.hpp"

namespace bcgame::sampling {

using Rng = std::mt19937_64;

/// Independent generator for item `index` of a run rooted at `seed`.
Rng stream(std::uint64_t seed, std::uint64_t index);

/// G G^T with standard Gaussian G (n x n): a Wishart-style PSD draw.
Matrix random_psd(Rng& rng, std::size_t n);

/// Random n x m matrix with i.i.d. standard Gaussian entries.
Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);

/// Random PSD profile rescaled so that sum_k Tr Q_k = fraction * power, with
/// fraction uniform in (0, 1] unless saturate is set.
Profile random_feasible_profile(Rng& rng, const std::vector<std::size_t>& dims, double power, bool saturate = false);

}  // namespace bcgame::sampling
