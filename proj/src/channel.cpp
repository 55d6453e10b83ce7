#include "bcgame/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bcgame/errors.hpp"

namespace bcgame {

Matrix BCChannel::noise_covariance(std::size_t k) const {
  if (const auto* white = std::get_if<WhiteNoise>(&noise)) {
    const auto n = static_cast<Eigen::Index>(rx_antennas(k));
    return white->level * Matrix::Identity(n, n);
  }
  return std::get<ColoredNoise>(noise).covariances.at(k);
}

double MACChannel::total_power() const {
  if (const auto* sum = std::get_if<SumPower>(&power)) return sum->total;
  const auto& p = std::get<IndividualPowers>(power).powers;
  return std::accumulate(p.begin(), p.end(), 0.0);
}

Order::Order(std::vector<std::size_t> sequence) : sequence_(std::move(sequence)) {
  position_.assign(sequence_.size(), sequence_.size());
  for (std::size_t j = 0; j < sequence_.size(); ++j) {
    const auto user = sequence_[j];
    if (user >= sequence_.size() || position_[user] != sequence_.size()) {
      throw ValidationError("order is not a permutation of the users");
    }
    position_[user] = j;
  }
}

Order Order::identity(std::size_t num_users) {
  std::vector<std::size_t> seq(num_users);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  return Order(std::move(seq));
}

Order Order::reversed() const {
  return Order(std::vector<std::size_t>(sequence_.rbegin(), sequence_.rend()));
}

namespace {

std::string user_tag(std::size_t k) { return "user " + std::to_string(k + 1) + ": "; }

bool finite_matrix(const Matrix& m) { return m.allFinite(); }

}  // namespace

ValidationReport validate(const BCChannel& channel) {
  ValidationReport report;
  auto& v = report.violations;
  if (channel.num_users() == 0) v.push_back("no users");
  if (channel.tx_antennas == 0) v.push_back("tx_antennas must be >= 1");
  if (!(std::isfinite(channel.power_budget) && channel.power_budget > 0.0)) {
    v.push_back("power budget must be finite and positive");
  }
  for (std::size_t k = 0; k < channel.num_users(); ++k) {
    const auto& h = channel.channels[k];
    if (h.rows() < 1) v.push_back(user_tag(k) + "rx_antennas must be >= 1");
    if (static_cast<std::size_t>(h.cols()) != channel.tx_antennas) {
      std::ostringstream os;
      os << user_tag(k) << "dimension mismatch: channel is " << h.rows() << "x" << h.cols()
         << " but tx_antennas is " << channel.tx_antennas;
      v.push_back(os.str());
    }
    if (!finite_matrix(h)) v.push_back(user_tag(k) + "channel has non-finite entries");
  }
  if (const auto* white = std::get_if<WhiteNoise>(&channel.noise)) {
    if (!(std::isfinite(white->level) && white->level > 0.0)) v.push_back("noise level must be positive");
  } else {
    const auto& cov = std::get<ColoredNoise>(channel.noise).covariances;
    if (cov.size() != channel.num_users()) {
      v.push_back("dimension mismatch: expected one noise covariance per user");
    } else {
      for (std::size_t k = 0; k < cov.size(); ++k) {
        const auto& n = cov[k];
        const auto rx = channel.channels[k].rows();
        if (n.rows() != rx || n.cols() != rx) {
          v.push_back(user_tag(k) + "dimension mismatch: noise covariance does not match rx_antennas");
          continue;
        }
        if (!finite_matrix(n) || !linalg::is_symmetric(n)) {
          v.push_back(user_tag(k) + "noise covariance not symmetric");
          continue;
        }
        if (linalg::min_eigenvalue(n) <= 1e-12 * (1.0 + std::abs(n.trace()))) {
          v.push_back(user_tag(k) + "noise covariance not positive definite");
        }
      }
    }
  }
  return report;
}

ValidationReport validate(const MACChannel& channel) {
  ValidationReport report;
  auto& v = report.violations;
  if (channel.num_users() == 0) v.push_back("no users");
  if (channel.rx_antennas == 0) v.push_back("rx_antennas must be >= 1");
  if (!(std::isfinite(channel.noise_level) && channel.noise_level > 0.0)) v.push_back("noise level must be positive");
  for (std::size_t k = 0; k < channel.num_users(); ++k) {
    const auto& h = channel.channels[k];
    if (h.cols() < 1) v.push_back(user_tag(k) + "tx_antennas must be >= 1");
    if (static_cast<std::size_t>(h.rows()) != channel.rx_antennas) {
      std::ostringstream os;
      os << user_tag(k) << "dimension mismatch: channel is " << h.rows() << "x" << h.cols()
         << " but rx_antennas is " << channel.rx_antennas;
      v.push_back(os.str());
    }
    if (!finite_matrix(h)) v.push_back(user_tag(k) + "channel has non-finite entries");
  }
  if (const auto* sum = std::get_if<SumPower>(&channel.power)) {
    if (!(std::isfinite(sum->total) && sum->total > 0.0)) v.push_back("power budget must be finite and positive");
  } else {
    const auto& p = std::get<IndividualPowers>(channel.power).powers;
    if (p.size() != channel.num_users()) v.push_back("dimension mismatch: expected one power per user");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!(std::isfinite(p[k]) && p[k] > 0.0)) v.push_back(user_tag(k) + "power must be finite and positive");
    }
  }
  return report;
}

BCChannel to_white_noise(const BCChannel& channel, double level) {
  if (!(level > 0.0)) throw ValidationError("target noise level must be positive");
  BCChannel out = channel;
  out.noise = WhiteNoise{level};
  if (const auto* white = std::get_if<WhiteNoise>(&channel.noise)) {
    const double scale = std::sqrt(level / white->level);
    for (auto& h : out.channels) h *= scale;
    return out;
  }
  const auto& cov = std::get<ColoredNoise>(channel.noise).covariances;
  if (cov.size() != channel.num_users()) throw ValidationError("expected one noise covariance per user");
  for (std::size_t k = 0; k < cov.size(); ++k) {
    Matrix inv_sqrt;
    try {
      if (linalg::min_eigenvalue(cov[k]) <= 0.0) throw std::domain_error("not PD");
      inv_sqrt = linalg::inv_sqrt_spd(cov[k]);
    } catch (const std::domain_error&) {
      throw ValidationError(user_tag(k) + "singular noise covariance");
    }
    out.channels[k] = std::sqrt(level) * inv_sqrt * channel.channels[k];
  }
  return out;
}

DegradednessResult is_aligned_degraded(const BCChannel& channel, double tol) {
  DegradednessResult result;
  const auto k_users = channel.num_users();
  const auto n = static_cast<Eigen::Index>(channel.tx_antennas);
  for (std::size_t k = 0; k < k_users; ++k) {
    const auto& h = channel.channels[k];
    if (h.rows() != n || h.cols() != n) return result;
    if ((h - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return result;
  }
  std::vector<Matrix> noise;
  for (std::size_t k = 0; k < k_users; ++k) noise.push_back(channel.noise_covariance(k));

  // N_i <= N_j implies tr N_i <= tr N_j, so sorting by trace yields the only
  // candidate chain (up to ties, which the PSD check resolves).
  std::vector<std::size_t> idx(k_users);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return noise[a].trace() < noise[b].trace(); });
  for (std::size_t j = 1; j < k_users; ++j) {
    const Matrix diff = noise[idx[j]] - noise[idx[j - 1]];
    const double scale = 1.0 + std::abs(noise[idx[j]].trace());
    if (linalg::min_eigenvalue(diff) < -tol * scale) return result;
  }
  result.aligned_degraded = true;
  result.ordering = std::move(idx);
  return result;
}

}  // namespace bcgame
