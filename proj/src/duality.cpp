#include "bcgame/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcgame/errors.hpp"

namespace bcgame {

ScalingWeights::ScalingWeights(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(std::isfinite(v) && v > 0.0)) throw ValidationError("scaling weights must be strictly positive");
  }
}

double DualityReport::max_rate_delta() const {
  return rate_deltas.empty() ? 0.0 : *std::max_element(rate_deltas.begin(), rate_deltas.end());
}

double Prop5Report::max_gap() const {
  double worst = 0.0;
  for (double g : nep_gaps) worst = std::max(worst, g);
  for (double g : gnep_gaps) worst = std::max(worst, g);
  return worst;
}

double Prop6Report::max_gap() const {
  double worst = 0.0;
  for (const auto& e : entries) {
    for (double g : e.gaps) worst = std::max(worst, g);
  }
  return worst;
}

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

/// Finds t >= 0 with rate(t * shape) = target; rate is nondecreasing in t.
template <typename RateFn>
double match_scale(const RateFn& rate, double target) {
  double hi = 1.0;
  for (int it = 0; it < 200 && rate(hi) < target; ++it) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Thin {
  Matrix u;
  Matrix v;
};

Thin thin_svd(const Matrix& f) {
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.matrixV()};
}

DualityReport make_report(const Profile& source, const Profile& target, const RateTuple& before,
                          const RateTuple& after) {
  DualityReport r;
  r.source = source;
  r.target = target;
  for (std::size_t k = 0; k < before.size(); ++k) r.rate_deltas.push_back(std::abs(before[k] - after[k]));
  r.power_delta = std::abs(linalg::total_trace(source) - linalg::total_trace(target));
  for (const auto& t : target) r.min_eigenvalues.push_back(linalg::min_eigenvalue(t));
  return r;
}

void require_rates(const DualityReport& report, double tol, const char* direction) {
  if (report.max_rate_delta() > tol) {
    std::ostringstream os;
    os << direction << ": transform failed, max rate delta " << report.max_rate_delta() << " > " << tol
       << ", power delta " << report.power_delta;
    throw VerificationError(os.str());
  }
}

BCChannel dual_bc_channel(const MACChannel& mac) {
  BCChannel bc;
  bc.tx_antennas = mac.rx_antennas;
  for (const auto& h : mac.channels) bc.channels.push_back(h.transpose());
  bc.noise = WhiteNoise{mac.noise_level};
  bc.power_budget = mac.total_power();
  return bc;
}

MACChannel dual_mac_channel(const BCChannel& white_bc) {
  MACChannel mac;
  mac.rx_antennas = white_bc.tx_antennas;
  for (const auto& h : white_bc.channels) mac.channels.push_back(h.transpose());
  mac.noise_level = std::get<WhiteNoise>(white_bc.noise).level;
  mac.power = SumPower{white_bc.power_budget};
  return mac;
}

}  // namespace

BCDual mac_to_bc(const MACChannel& mac, const Profile& q, const Order& order, double tol) {
  const Game mac_game(mac, order);
  mac_game.check_profile(q);
  const RateTuple target_rates = mac_game.rates(q);

  BCDual out;
  out.channel = dual_bc_channel(mac);
  out.order = order.reversed();
  const Game bc_game(out.channel, out.order);

  const double scale = 1.0 / std::sqrt(mac.noise_level);
  const auto nr = static_cast<Eigen::Index>(mac.rx_antennas);
  out.profile.assign(q.size(), Matrix::Zero(nr, nr));
  std::vector<std::size_t> fallback;

  // BC user at position j is interfered by BC positions < j, so build S in BC order.
  for (std::size_t pos = 0; pos < out.order.size(); ++pos) {
    const auto k = out.order.user_at(pos);
    const Matrix g = scale * mac.channels[k];
    const auto nk = g.cols();
    Matrix bc_interference = Matrix::Zero(nr, nr);
    for (std::size_t j = 0; j < pos; ++j) bc_interference += out.profile[out.order.user_at(j)];
    const Matrix a = identity(nk) + g.transpose() * bc_interference * g;
    Matrix b = identity(nr);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (order.precedes(i, k)) {
        const Matrix gi = scale * mac.channels[i];
        b += gi * q[i] * gi.transpose();
      }
    }
    const Matrix a_half = linalg::sqrt_spd(a);
    const Matrix a_inv_half = linalg::inv_sqrt_spd(a);
    const Matrix b_inv_half = linalg::inv_sqrt_spd(b);
    const Thin svd = thin_svd(b_inv_half * g * a_inv_half);
    const Matrix map = b_inv_half * svd.u * svd.v.transpose() * a_half;
    out.profile[k] = linalg::symmetrize(map * q[k] * map.transpose());

    if (std::abs(bc_game.rate(out.profile, k) - target_rates[k]) > tol) {
      Matrix shape = out.profile[k];
      if (shape.trace() <= 0.0) shape = b_inv_half * svd.u.col(0) * svd.u.col(0).transpose() * b_inv_half;
      Profile trial = out.profile;
      auto rate = [&](double t) {
        trial[k] = t * shape;
        return bc_game.rate(trial, k);
      };
      out.profile[k] = linalg::symmetrize(match_scale(rate, target_rates[k]) * shape);
      fallback.push_back(k);
    }
  }
  out.report = make_report(q, out.profile, target_rates, bc_game.rates(out.profile));
  out.report.fallback_users = std::move(fallback);
  require_rates(out.report, tol, "mac_to_bc");
  return out;
}

MACDual bc_to_mac(const BCChannel& bc, const Profile& s, const Order& order, double tol) {
  const Game bc_game(bc, order);
  bc_game.check_profile(s);
  const RateTuple target_rates = bc_game.rates(s);

  const double level = std::holds_alternative<WhiteNoise>(bc.noise) ? std::get<WhiteNoise>(bc.noise).level : 1.0;
  const BCChannel white = to_white_noise(bc, level);

  MACDual out;
  out.channel = dual_mac_channel(white);
  out.order = order.reversed();
  const Game mac_game(out.channel, out.order);

  const double scale = 1.0 / std::sqrt(level);
  const auto nt = static_cast<Eigen::Index>(bc.tx_antennas);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto nk = white.channels[k].rows();
    out.profile.push_back(Matrix::Zero(nk, nk));
  }
  std::vector<std::size_t> fallback;

  // MAC user at position j sees MAC positions < j, so build Q in MAC order.
  for (std::size_t pos = 0; pos < out.order.size(); ++pos) {
    const auto k = out.order.user_at(pos);
    const Matrix g = scale * white.channels[k].transpose();
    const auto nk = g.cols();
    Matrix bc_interference = Matrix::Zero(nt, nt);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (order.precedes(j, k)) bc_interference += s[j];
    }
    const Matrix a = identity(nk) + g.transpose() * bc_interference * g;
    Matrix b = identity(nt);
    for (std::size_t j = 0; j < pos; ++j) {
      const auto i = out.order.user_at(j);
      const Matrix gi = scale * white.channels[i].transpose();
      b += gi * out.profile[i] * gi.transpose();
    }
    const Matrix a_inv_half = linalg::inv_sqrt_spd(a);
    const Matrix b_half = linalg::sqrt_spd(b);
    const Matrix b_inv_half = linalg::inv_sqrt_spd(b);
    const Thin svd = thin_svd(b_inv_half * g * a_inv_half);
    const Matrix map = a_inv_half * svd.v * svd.u.transpose() * b_half;
    out.profile[k] = linalg::symmetrize(map * s[k] * map.transpose());

    if (std::abs(mac_game.rate(out.profile, k) - target_rates[k]) > tol) {
      Matrix shape = out.profile[k];
      if (shape.trace() <= 0.0) shape = a_inv_half * svd.v.col(0) * svd.v.col(0).transpose() * a_inv_half;
      Profile trial = out.profile;
      auto rate = [&](double t) {
        trial[k] = t * shape;
        return mac_game.rate(trial, k);
      };
      out.profile[k] = linalg::symmetrize(match_scale(rate, target_rates[k]) * shape);
      fallback.push_back(k);
    }
  }
  out.report = make_report(s, out.profile, target_rates, mac_game.rates(out.profile));
  out.report.fallback_users = std::move(fallback);
  require_rates(out.report, tol, "bc_to_mac");
  return out;
}

Game dual_game(const Game& game) {
  if (game.is_broadcast()) {
    const auto& bc = game.bc();
    const double level = std::holds_alternative<WhiteNoise>(bc.noise) ? std::get<WhiteNoise>(bc.noise).level : 1.0;
    return Game(dual_mac_channel(to_white_noise(bc, level)), game.order().reversed());
  }
  return Game(dual_bc_channel(game.mac()), game.order().reversed());
}

Prop5Report verify_prop5(const Game& game, const Profile& q) {
  game.check_profile(q);
  Prop5Report report;
  const double total = linalg::total_trace(q);
  report.slack = game.budget() - total;
  for (std::size_t k = 0; k < game.num_users(); ++k) {
    const double own = q[k].trace();
    report.induced_powers.push_back(own);
    report.nep_gaps.push_back(unilateral_gap(game, q, k, own));
    report.gnep_gaps.push_back(unilateral_gap(game, q, k, std::max(0.0, game.budget() - (total - own))));
  }
  return report;
}

Prop6Report verify_prop6(const Game& game, const Profile& q, const std::vector<ScalingWeights>& alphas,
                         const std::vector<double>& powers, double feasibility_tol) {
  game.check_profile(q);
  if (powers.size() != game.num_users()) throw ValidationError("prop6: one power per user required");
  Prop6Report report;
  for (const auto& alpha : alphas) {
    if (alpha.size() != game.num_users()) throw ValidationError("prop6: alpha has the wrong length");
    Prop6Entry entry;
    entry.alpha = alpha.values();
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      lhs += q[k].trace() / alpha[k];
      rhs += powers[k] / alpha[k];
    }
    if (lhs > rhs + feasibility_tol * (1.0 + std::abs(rhs))) {
      entry.skipped = true;
      entry.note = "profile infeasible for this scaled constraint";
      report.entries.push_back(std::move(entry));
      continue;
    }
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double others = lhs - q[k].trace() / alpha[k];
      const double budget_k = std::max(0.0, alpha[k] * (rhs - others));
      entry.gaps.push_back(unilateral_gap(game, q, k, budget_k));
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

Profile solve_individual_ne(const Game& game, const std::vector<double>& powers, int max_sweeps, double tol) {
  if (powers.size() != game.num_users()) throw ValidationError("individual NE: one power per user required");
  Profile q = game.zero_profile();
  double change = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    change = 0.0;
    for (std::size_t pos = 0; pos < game.num_users(); ++pos) {
      const auto k = game.order().user_at(pos);
      Matrix next = waterfill(game.player_view(q, k), powers[k]);
      change = std::max(change, (next - q[k]).norm());
      q[k] = std::move(next);
    }
    if (change <= tol) return q;
  }
  throw ConvergenceError("individual-power NE did not converge", q, change);
}

}  // namespace bcgame
