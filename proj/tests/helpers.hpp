#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bcgame/rates.hpp"
#include "bcgame/sampling.hpp"

namespace testing {

using bcgame::Matrix;
using bcgame::Profile;

inline Matrix m1(double x) { return Matrix::Constant(1, 1, x); }

inline Profile scalars(std::initializer_list<double> xs) {
  Profile q;
  for (double x : xs) q.push_back(m1(x));
  return q;
}

/// Scalar aligned degraded BC with unit gains.
inline bcgame::BCChannel scalar_adbc(std::vector<double> noise, double power) {
  bcgame::BCChannel bc;
  bc.tx_antennas = 1;
  bcgame::ColoredNoise cn;
  for (double n : noise) {
    bc.channels.push_back(m1(1.0));
    cn.covariances.push_back(m1(n));
  }
  bc.noise = cn;
  bc.power_budget = power;
  return bc;
}

inline bcgame::Game paper_adbc() { return bcgame::Game(scalar_adbc({1.0, 3.0}, 10.0), bcgame::Order::identity(2)); }

inline bcgame::MACChannel scalar_mac(std::vector<double> gains, double noise, double power) {
  bcgame::MACChannel mac;
  mac.rx_antennas = 1;
  for (double g : gains) mac.channels.push_back(m1(g));
  mac.noise_level = noise;
  mac.power = bcgame::SumPower{power};
  return mac;
}

inline Matrix random_pd(bcgame::sampling::Rng& rng, std::size_t n, double floor = 0.1) {
  return bcgame::sampling::random_psd(rng, n) + floor * Matrix::Identity(n, n);
}

/// Aligned degraded BC: H_k = I and N_1 <= N_2 <= ... in the PSD order.
inline bcgame::BCChannel random_adbc(bcgame::sampling::Rng& rng, std::size_t users, std::size_t n, double power) {
  bcgame::BCChannel bc;
  bc.tx_antennas = n;
  bcgame::ColoredNoise cn;
  Matrix noise = random_pd(rng, n);
  for (std::size_t k = 0; k < users; ++k) {
    bc.channels.push_back(Matrix::Identity(n, n));
    cn.covariances.push_back(noise);
    noise += 0.5 * bcgame::sampling::random_psd(rng, n);
  }
  bc.noise = cn;
  bc.power_budget = power;
  return bc;
}

inline bcgame::BCChannel random_bc(bcgame::sampling::Rng& rng, std::size_t users, std::size_t nt, std::size_t nr,
                                   double power) {
  bcgame::BCChannel bc;
  bc.tx_antennas = nt;
  for (std::size_t k = 0; k < users; ++k) bc.channels.push_back(bcgame::sampling::random_gaussian(rng, nr, nt));
  bc.noise = bcgame::WhiteNoise{1.0};
  bc.power_budget = power;
  return bc;
}

inline bcgame::MACChannel random_mac(bcgame::sampling::Rng& rng, std::size_t users, std::size_t nr, std::size_t nk,
                                     double power, double noise = 1.0) {
  bcgame::MACChannel mac;
  mac.rx_antennas = nr;
  for (std::size_t k = 0; k < users; ++k) mac.channels.push_back(bcgame::sampling::random_gaussian(rng, nr, nk));
  mac.noise_level = noise;
  mac.power = bcgame::SumPower{power};
  return mac;
}

inline std::vector<std::size_t> dims_of(const bcgame::Game& game) {
  std::vector<std::size_t> d;
  for (std::size_t k = 0; k < game.num_users(); ++k) d.push_back(game.dim(k));
  return d;
}

inline Matrix random_symmetric(bcgame::sampling::Rng& rng, std::size_t n) {
  const Matrix g = bcgame::sampling::random_gaussian(rng, n, n);
  return 0.5 * (g + g.transpose());
}

/// Central-difference derivative of f at x along every symmetric direction, as a matrix
/// G with d/dt f(x + t E) = Tr[G E].
inline Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& x, double h = 1e-5) {
  const auto n = x.rows();
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      const double d = (f(x + h * e) - f(x - h * e)) / (2.0 * h);
      if (i == j) {
        g(i, i) = d;
      } else {
        g(i, j) = d / 2.0;
        g(j, i) = d / 2.0;
      }
    }
  }
  return g;
}

}  // namespace testing
