#include "bcgame/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace bcgame::linalg {

double logdet_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(symmetrize(a));
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("logdet: matrix is not positive definite");
  }
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    acc += std::log(l(i, i));
  }
  return 2.0 * acc;
}

Matrix inverse_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(symmetrize(a));
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("inverse: matrix is not positive definite");
  }
  return symmetrize(llt.solve(Matrix::Identity(a.rows(), a.cols())));
}

namespace {

Matrix spectral_power(const Matrix& a, double exponent) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
  const Vector& ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() <= 0.0) {
    throw std::domain_error("matrix power: matrix is not positive definite");
  }
  Vector scaled = ev.array().pow(exponent).matrix();
  return symmetrize(es.eigenvectors() * scaled.asDiagonal() * es.eigenvectors().transpose());
}

}  // namespace

Matrix sqrt_spd(const Matrix& a) { return spectral_power(a, 0.5); }
Matrix inv_sqrt_spd(const Matrix& a) { return spectral_power(a, -0.5); }

double min_eigenvalue(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Matrix negative_part(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
  Vector neg = es.eigenvalues().cwiseMin(0.0);
  return es.eigenvectors() * neg.asDiagonal() * es.eigenvectors().transpose();
}

double trace_inner(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum(); }

double total_trace(std::span<const Matrix> profile) {
  double t = 0.0;
  for (const auto& q : profile) t += q.trace();
  return t;
}

double frobenius_distance(std::span<const Matrix> a, std::span<const Matrix> b) {
  if (a.size() != b.size()) throw std::invalid_argument("profile size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]).squaredNorm();
  return std::sqrt(acc);
}

double frobenius_norm(std::span<const Matrix> a) {
  double acc = 0.0;
  for (const auto& m : a) acc += m.squaredNorm();
  return std::sqrt(acc);
}

bool is_psd(const Matrix& a, double tol) {
  if (a.size() == 0) return true;
  return min_eigenvalue(a) >= -tol * (1.0 + std::abs(a.trace()));
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * (1.0 + a.cwiseAbs().maxCoeff());
}

Profile zeros_like(std::span<const Matrix> profile) {
  Profile out;
  out.reserve(profile.size());
  for (const auto& q : profile) out.push_back(Matrix::Zero(q.rows(), q.cols()));
  return out;
}

}  // namespace bcgame::linalg
