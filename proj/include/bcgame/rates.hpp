#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "bcgame/channel.hpp"
#include "bcgame/linalg.hpp"

namespace bcgame {

/// Per-user achievable rates in nats.
using RateTuple = std::vector<double>;

enum class GameKind { broadcast, multiple_access };

/// Per-player view of the utility: v_k = log|Z + G Q_k G^T| - log|Z|, where
/// Z collects the noise plus the interference from users earlier in the order.
struct PlayerView {
  Matrix interference;
  Matrix gain;
};

/// A rate game: a channel, an interference order and the single shared
/// sum-power constraint sum_k Tr Q_k <= budget().
///
/// BC utilities follow dirty paper coding; MAC utilities follow successive
/// interference cancellation. Member evaluators assume a well-formed PSD
/// profile; the free functions below check their input.
class Game {
 public:
  Game(BCChannel channel, Order order);
  Game(MACChannel channel, Order order);

  GameKind kind() const { return kind_; }
  bool is_broadcast() const { return kind_ == GameKind::broadcast; }
  std::size_t num_users() const { return order_.size(); }
  /// Side length of player k's covariance matrix.
  std::size_t dim(std::size_t k) const;
  double budget() const;
  const Order& order() const { return order_; }
  const BCChannel& bc() const { return std::get<BCChannel>(channel_); }
  const MACChannel& mac() const { return std::get<MACChannel>(channel_); }

  /// Same channel with a different interference order.
  Game with_order(Order order) const;
  /// Same channel with a different shared budget.
  Game with_budget(double budget) const;

  PlayerView player_view(const Profile& q, std::size_t k) const;
  double rate(const Profile& q, std::size_t k) const;
  RateTuple rates(const Profile& q) const;
  /// d v_k / d Q_k.
  Matrix own_gradient(const Profile& q, std::size_t k) const;
  /// d v_i / d Q_k. Exactly zero when k does not precede i in the order.
  Matrix cross_gradient(const Profile& q, std::size_t i, std::size_t k) const;

  Profile zero_profile() const;
  /// Q_k = budget / (K n_k) I.
  Profile uniform_profile() const;

  /// Throws ValidationError for shape, symmetry or PSD violations.
  void check_profile(const Profile& q, double psd_tol = 1e-9) const;

 private:
  const Matrix& gain(std::size_t k) const;
  Matrix noise(std::size_t k) const;

  GameKind kind_;
  std::variant<BCChannel, MACChannel> channel_;
  Order order_;
};

/// v_k = log|N_k + H_k S_k H_k^T| - log|N_k + H_k S'_k H_k^T| where S_k sums
/// Q over k and the users before it in the order, S'_k over those before it.
RateTuple bc_dpc_rates(const BCChannel& channel, const Profile& q, const Order& order);

/// v_k = log|N0 I + sum_{i<=k} H_i Q_i H_i^T| - log|N0 I + sum_{i<k} H_i Q_i H_i^T|.
RateTuple mac_sic_rates(const MACChannel& channel, const Profile& q, const Order& order);

Matrix own_gradient(const Game& game, const Profile& q, std::size_t k);
Matrix cross_gradient(const Game& game, const Profile& q, std::size_t i, std::size_t k);

/// sum_i weights_i v_i(Q).
double weighted_sum_rate(const Game& game, const Profile& q, std::span<const double> weights);

}  // namespace bcgame
