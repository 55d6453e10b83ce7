#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace bcgame {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// An ordered K-tuple of square symmetric matrices (one strategy per player).
using Profile = std::vector<Matrix>;

namespace linalg {

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// log|A| of a symmetric positive-definite matrix via Cholesky.
/// Throws std::domain_error when A is not numerically positive definite.
double logdet_spd(const Matrix& a);

/// Inverse of a symmetric positive-definite matrix (symmetrized on return).
Matrix inverse_spd(const Matrix& a);

/// A^{1/2} and A^{-1/2} for symmetric positive-definite A.
Matrix sqrt_spd(const Matrix& a);
Matrix inv_sqrt_spd(const Matrix& a);

double min_eigenvalue(const Matrix& a);
double max_eigenvalue(const Matrix& a);

/// Part of A on its negative eigenvalues (A = pos + neg).
Matrix negative_part(const Matrix& a);

double trace_inner(const Matrix& a, const Matrix& b);

double total_trace(std::span<const Matrix> profile);
double frobenius_distance(std::span<const Matrix> a, std::span<const Matrix> b);
double frobenius_norm(std::span<const Matrix> a);

/// PSD test with the tolerance min eig >= -tol * (1 + trace).
bool is_psd(const Matrix& a, double tol = 1e-9);
bool is_symmetric(const Matrix& a, double tol = 1e-9);

Profile zeros_like(std::span<const Matrix> profile);

}  // namespace linalg
}  // namespace bcgame
