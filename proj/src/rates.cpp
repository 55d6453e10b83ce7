#include "bcgame/rates.hpp"

#include <sstream>
#include <stdexcept>

#include "bcgame/errors.hpp"

namespace bcgame {

namespace {

constexpr double kRateClamp = 1e-12;

double clamp_rate(double v) { return (v < 0.0 && v >= -kRateClamp) ? 0.0 : v; }

void require(const ValidationReport& report) {
  if (!report.ok()) throw ValidationError("invalid channel: " + report.violations.front());
}

}  // namespace

Game::Game(BCChannel channel, Order order)
    : kind_(GameKind::broadcast), channel_(std::move(channel)), order_(std::move(order)) {
  require(validate(bc()));
  if (order_.size() != bc().num_users()) throw ValidationError("order length does not match number of users");
}

Game::Game(MACChannel channel, Order order)
    : kind_(GameKind::multiple_access), channel_(std::move(channel)), order_(std::move(order)) {
  require(validate(mac()));
  if (order_.size() != mac().num_users()) throw ValidationError("order length does not match number of users");
}

std::size_t Game::dim(std::size_t k) const {
  return is_broadcast() ? bc().tx_antennas : mac().tx_antennas(k);
}

double Game::budget() const { return is_broadcast() ? bc().power_budget : mac().total_power(); }

Game Game::with_order(Order order) const {
  if (is_broadcast()) return Game(bc(), std::move(order));
  return Game(mac(), std::move(order));
}

Game Game::with_budget(double budget) const {
  if (is_broadcast()) {
    BCChannel c = bc();
    c.power_budget = budget;
    return Game(std::move(c), order_);
  }
  MACChannel c = mac();
  c.power = SumPower{budget};
  return Game(std::move(c), order_);
}

const Matrix& Game::gain(std::size_t k) const {
  return is_broadcast() ? bc().channels.at(k) : mac().channels.at(k);
}

Matrix Game::noise(std::size_t k) const {
  if (is_broadcast()) return bc().noise_covariance(k);
  const auto n = static_cast<Eigen::Index>(mac().rx_antennas);
  return mac().noise_level * Matrix::Identity(n, n);
}

PlayerView Game::player_view(const Profile& q, std::size_t k) const {
  Matrix z = noise(k);
  const auto pos = order_.position_of(k);
  if (is_broadcast()) {
    const auto n = static_cast<Eigen::Index>(bc().tx_antennas);
    Matrix s = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < pos; ++j) s += q[order_.user_at(j)];
    const Matrix& h = gain(k);
    z += h * s * h.transpose();
  } else {
    for (std::size_t j = 0; j < pos; ++j) {
      const auto i = order_.user_at(j);
      const Matrix& h = gain(i);
      z += h * q[i] * h.transpose();
    }
  }
  return {linalg::symmetrize(z), gain(k)};
}

double Game::rate(const Profile& q, std::size_t k) const {
  const auto view = player_view(q, k);
  const Matrix signal = view.interference + view.gain * q[k] * view.gain.transpose();
  return clamp_rate(linalg::logdet_spd(signal) - linalg::logdet_spd(view.interference));
}

RateTuple Game::rates(const Profile& q) const {
  RateTuple out(num_users());
  for (std::size_t k = 0; k < num_users(); ++k) out[k] = rate(q, k);
  return out;
}

Matrix Game::own_gradient(const Profile& q, std::size_t k) const {
  const auto view = player_view(q, k);
  const Matrix phi = linalg::inverse_spd(view.interference + view.gain * q[k] * view.gain.transpose());
  return linalg::symmetrize(view.gain.transpose() * phi * view.gain);
}

Matrix Game::cross_gradient(const Profile& q, std::size_t i, std::size_t k) const {
  if (i == k) return own_gradient(q, k);
  const auto n = static_cast<Eigen::Index>(dim(k));
  if (!order_.precedes(k, i)) return Matrix::Zero(n, n);
  const auto view = player_view(q, i);
  const Matrix d = linalg::inverse_spd(view.interference + view.gain * q[i] * view.gain.transpose()) -
                   linalg::inverse_spd(view.interference);
  // BC: user i's receiver sees Q_k through H_i. MAC: the common receiver sees it through H_k.
  const Matrix& h = is_broadcast() ? gain(i) : gain(k);
  return linalg::symmetrize(h.transpose() * d * h);
}

Profile Game::zero_profile() const {
  Profile out;
  for (std::size_t k = 0; k < num_users(); ++k) {
    const auto n = static_cast<Eigen::Index>(dim(k));
    out.push_back(Matrix::Zero(n, n));
  }
  return out;
}

Profile Game::uniform_profile() const {
  Profile out;
  double dims = 0.0;
  for (std::size_t k = 0; k < num_users(); ++k) dims += static_cast<double>(dim(k));
  for (std::size_t k = 0; k < num_users(); ++k) {
    const auto n = static_cast<Eigen::Index>(dim(k));
    out.push_back(budget() / dims * Matrix::Identity(n, n));
  }
  return out;
}

void Game::check_profile(const Profile& q, double psd_tol) const {
  if (q.size() != num_users()) throw ValidationError("profile has the wrong number of users");
  for (std::size_t k = 0; k < q.size(); ++k) {
    const auto n = static_cast<Eigen::Index>(dim(k));
    std::ostringstream tag;
    tag << "user " << (k + 1) << ": ";
    if (q[k].rows() != n || q[k].cols() != n) throw ValidationError(tag.str() + "covariance dimension mismatch");
    if (!q[k].allFinite() || !linalg::is_symmetric(q[k])) throw ValidationError(tag.str() + "covariance not symmetric");
    if (!linalg::is_psd(q[k], psd_tol)) throw ValidationError(tag.str() + "covariance not positive semidefinite");
  }
}

RateTuple bc_dpc_rates(const BCChannel& channel, const Profile& q, const Order& order) {
  const Game game(channel, order);
  game.check_profile(q);
  return game.rates(q);
}

RateTuple mac_sic_rates(const MACChannel& channel, const Profile& q, const Order& order) {
  const Game game(channel, order);
  game.check_profile(q);
  return game.rates(q);
}

Matrix own_gradient(const Game& game, const Profile& q, std::size_t k) {
  game.check_profile(q);
  return game.own_gradient(q, k);
}

Matrix cross_gradient(const Game& game, const Profile& q, std::size_t i, std::size_t k) {
  game.check_profile(q);
  return game.cross_gradient(q, i, k);
}

double weighted_sum_rate(const Game& game, const Profile& q, std::span<const double> weights) {
  if (weights.size() != game.num_users()) throw ValidationError("weight vector has the wrong length");
  double acc = 0.0;
  for (std::size_t k = 0; k < game.num_users(); ++k) {
    if (weights[k] != 0.0) acc += weights[k] * game.rate(q, k);
  }
  return acc;
}

}  // namespace bcgame
