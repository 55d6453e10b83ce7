#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "bcgame/linalg.hpp"

namespace bcgame {

/// Spatially white receiver noise: N0 per receive antenna.
struct WhiteNoise {
  double level = 1.0;
};

/// Per-user noise covariances N_k (n_k x n_k, symmetric positive definite).
struct ColoredNoise {
  std::vector<Matrix> covariances;
};

using BCNoise = std::variant<WhiteNoise, ColoredNoise>;

/// Gaussian broadcast channel: one transmitter with n_t antennas, K receivers.
/// channels[k] is the n_k x n_t gain matrix of receiver k.
struct BCChannel {
  std::size_t tx_antennas = 0;
  std::vector<Matrix> channels;
  BCNoise noise = WhiteNoise{};
  double power_budget = 0.0;

  std::size_t num_users() const { return channels.size(); }
  std::size_t rx_antennas(std::size_t k) const { return static_cast<std::size_t>(channels.at(k).rows()); }
  /// N_k, materialized as N0*I for white noise.
  Matrix noise_covariance(std::size_t k) const;
};

struct SumPower {
  double total = 0.0;
};

struct IndividualPowers {
  std::vector<double> powers;
};

using PowerMode = std::variant<SumPower, IndividualPowers>;

/// Gaussian multiple-access channel with a common n_r-antenna receiver.
/// channels[k] is the n_r x n_k gain matrix of transmitter k.
struct MACChannel {
  std::size_t rx_antennas = 0;
  std::vector<Matrix> channels;
  double noise_level = 1.0;
  PowerMode power = SumPower{};

  std::size_t num_users() const { return channels.size(); }
  std::size_t tx_antennas(std::size_t k) const { return static_cast<std::size_t>(channels.at(k).cols()); }
  /// Shared budget: the sum power, or the sum of the individual powers.
  double total_power() const;
};

/// Interference order. The user at position j is interfered by (BC, dirty
/// paper coding) or sees undecoded signals from (MAC, successive
/// cancellation) exactly the users at positions 0..j-1. Users are 0-based.
class Order {
 public:
  Order() = default;
  explicit Order(std::vector<std::size_t> sequence);

  static Order identity(std::size_t num_users);

  Order reversed() const;
  std::size_t size() const { return sequence_.size(); }
  std::size_t user_at(std::size_t position) const { return sequence_.at(position); }
  std::size_t position_of(std::size_t user) const { return position_.at(user); }
  /// True when user a is listed strictly before user b.
  bool precedes(std::size_t a, std::size_t b) const { return position_of(a) < position_of(b); }
  const std::vector<std::size_t>& sequence() const { return sequence_; }

  friend bool operator==(const Order& a, const Order& b) { return a.sequence_ == b.sequence_; }

 private:
  std::vector<std::size_t> sequence_;
  std::vector<std::size_t> position_;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const BCChannel& channel);
ValidationReport validate(const MACChannel& channel);

/// Equivalent white-noise representation: H_k <- sqrt(N0) N_k^{-1/2} H_k.
/// Throws ValidationError("singular noise covariance") if some N_k is not PD.
BCChannel to_white_noise(const BCChannel& channel, double level = 1.0);

struct DegradednessResult {
  bool aligned_degraded = false;
  /// Users from least to most noisy: N_{o[0]} <= N_{o[1]} <= ... (PSD order).
  std::vector<std::size_t> ordering;
};

/// Aligned (n_t = n_k, H_k = I) and degraded (noise covariances form a PSD chain).
DegradednessResult is_aligned_degraded(const BCChannel& channel, double tol = 1e-9);

}  // namespace bcgame
