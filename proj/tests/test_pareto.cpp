#include <doctest.h>

#include <cmath>

#include "bcgame/errors.hpp"
#include "bcgame/pareto.hpp"
#include "helpers.hpp"

using namespace bcgame;
using namespace bcgame::linalg;
using testing::m1;
using testing::scalars;

namespace {

/// Direct search over Q_1 in [0, 10] (Q_2 = 10 - Q_1) for the scalar example.
std::pair<double, double> grid_argmax(const Game& g, const ParetoWeights& gamma, double step = 1e-4) {
  double best = -1.0;
  double arg = 0.0;
  for (int i = 0; i * step <= 10.0 + 1e-12; ++i) {
    const double q1 = std::min(10.0, i * step);
    const double v = weighted_sum_rate(g, scalars({q1, 10.0 - q1}), gamma.values());
    if (v > best) {
      best = v;
      arg = q1;
    }
  }
  return {arg, best};
}

}  // namespace

TEST_CASE("Pareto weights are normalized and nonnegative") {
  const ParetoWeights g({1.0, 3.0});
  CHECK(g[0] == doctest::Approx(0.25));
  CHECK(g[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(ParetoWeights({-0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(ParetoWeights({0.0, 0.0}), ValidationError);
}

TEST_CASE("interior Pareto point of the two-user example") {
  const Game g = testing::paper_adbc();
  const ParetoWeights gamma({0.41, 0.59});
  const auto sol = pareto_solve(g, gamma);
  CHECK(sol.via_dual);
  CHECK(sol.warnings.empty());
  // gamma_1/(Q_1 + 1) = gamma_2/(Q_1 + 3)
  const double q1 = (0.59 - 3.0 * 0.41) / (0.41 - 0.59);
  CHECK(sol.profile[0](0, 0) == doctest::Approx(q1).epsilon(1e-8));
  CHECK(std::abs(sol.rates[0] - 1.5) <= 0.02);
  CHECK(std::abs(sol.rates[1] - 0.7) <= 0.02);
  CHECK(sol.kkt.max_residual() <= 1e-6);
  const auto [arg, best] = grid_argmax(g, gamma);
  CHECK(std::abs(arg - q1) <= 1e-4);
  CHECK(sol.value >= best - 1e-10);
}

TEST_CASE("stationary Pareto point at gamma = (0.4, 0.6)") {
  const Game g = testing::paper_adbc();
  const auto sol = pareto_solve(g, ParetoWeights({0.4, 0.6}));
  CHECK(sol.profile[0](0, 0) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(sol.profile[1](0, 0) == doctest::Approx(7.0).epsilon(1e-8));
  CHECK(sol.rates[0] == doctest::Approx(std::log(4.0)));
  CHECK(sol.rates[1] == doctest::Approx(std::log(13.0 / 6.0)));
}

TEST_CASE("corner point for every gamma_1 of at least 11/24") {
  const Game g = testing::paper_adbc();
  for (double g1 : {11.0 / 24.0, 0.5, 0.6, 0.8, 1.0}) {
    const auto sol = pareto_solve(g, ParetoWeights({g1, 1.0 - g1}));
    CHECK(std::abs(sol.profile[0](0, 0) - 10.0) <= 1e-6);
    CHECK(std::abs(sol.profile[1](0, 0)) <= 1e-6);
    CHECK(std::abs(sol.rates[0] - std::log(11.0)) <= 1e-6);
    CHECK(std::abs(sol.rates[1]) <= 1e-6);
    CHECK(sol.kkt.max_residual() <= 1e-6);
  }
  // Decreasing weights are outside the concave regime and say so.
  CHECK_FALSE(pareto_solve(g, ParetoWeights({0.8, 0.2})).warnings.empty());
}

TEST_CASE("frontier endpoints are single-user points") {
  const Game g = testing::paper_adbc();
  const auto first = pareto_solve(g, ParetoWeights({1.0, 0.0}));
  CHECK(first.rates[0] == doctest::Approx(std::log(11.0)));
  const auto last = pareto_solve(g, ParetoWeights({0.0, 1.0}));
  CHECK(last.profile[1](0, 0) == doctest::Approx(10.0));
  CHECK(last.rates[1] == doctest::Approx(std::log(13.0 / 3.0)));
}

TEST_CASE("frontier sweep is monotone and below the max sum rate") {
  const Game g = testing::paper_adbc();
  const auto points = frontier_sweep(g, two_user_grid(101), {}, 4);
  REQUIRE(points.size() == 101);
  const double max_sum = 2.0 * pareto_solve(g, ParetoWeights({0.5, 0.5})).value;
  for (std::size_t i = 0; i < points.size(); ++i) {
    REQUIRE(points[i].error.empty());
    CHECK(points[i].rates[0] + points[i].rates[1] <= max_sum + 1e-8);
    if (i > 0) {
      CHECK(points[i].rates[0] >= points[i - 1].rates[0] - 1e-9);
      CHECK(points[i].rates[1] <= points[i - 1].rates[1] + 1e-9);
    }
  }
  const auto again = frontier_sweep(g, two_user_grid(101), {}, 1);
  for (std::size_t i = 0; i < points.size(); ++i) CHECK(again[i].rates == points[i].rates);
}

TEST_CASE("weighted sum gradient matches central differences") {
  sampling::Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g(testing::random_bc(rng, 3, 2, 2, 3.0), Order({1, 0, 2}));
    Profile q = sampling::random_feasible_profile(rng, testing::dims_of(g), 3.0);
    for (auto& m : q) m += 0.1 * Matrix::Identity(2, 2);
    const ParetoWeights gamma({0.2, 0.5, 0.3});
    const auto grad = weighted_sum_gradient(g, q, gamma);
    for (std::size_t k = 0; k < 3; ++k) {
      auto f = [&](const Matrix& x) {
        Profile p = q;
        p[k] = x;
        return weighted_sum_rate(g, p, gamma.values());
      };
      CHECK((testing::fd_gradient(f, q[k]) - grad[k]).norm() <= 1e-6);
    }
  }
}

TEST_CASE("concave MAC solve and multi-start agree with a fine search") {
  const Game mac(testing::scalar_mac({1.0, 2.0}, 1.0, 3.0), Order::identity(2));
  for (double g1 : {0.2, 0.5, 0.7, 0.9}) {
    const ParetoWeights gamma({g1, 1.0 - g1});
    const auto sol = pareto_solve(mac, gamma);
    CHECK(sol.concave == (g1 >= 0.5));
    double best = -1.0;
    for (int i = 0; i <= 30000; ++i) {
      const double q1 = 1e-4 * i;
      best = std::max(best, weighted_sum_rate(mac, scalars({q1, 3.0 - q1}), gamma.values()));
    }
    CHECK(sol.value >= best - 1e-8);
    CHECK(sol.kkt.max_residual() <= 1e-6);
  }
}

TEST_CASE("matrix Pareto solutions satisfy KKT and beat random profiles") {
  sampling::Rng rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    const Game g(testing::random_adbc(rng, 3, 2, 3.0), Order::identity(3));
    const ParetoWeights gamma({0.2, 0.3, 0.5});
    const auto sol = pareto_solve(g, gamma);
    CHECK(sol.via_dual);
    CHECK(sol.kkt.max_residual() <= 1e-6);
    for (int i = 0; i < 300; ++i) {
      const Profile q = sampling::random_feasible_profile(rng, testing::dims_of(g), 3.0);
      CHECK(sol.value >= weighted_sum_rate(g, q, gamma.values()) - 1e-9);
    }
  }
}

TEST_CASE("weight map at gamma = (0.41, 0.59)") {
  const Game g = testing::paper_adbc();
  const ParetoWeights gamma({0.41, 0.59});
  const auto sol = pareto_solve(g, gamma);
  const auto map = weight_map_gamma_to_r(g, gamma, sol.profile);
  CHECK(map.weights[1] == doctest::Approx(1.0));
  CHECK(std::abs(map.weights[0] / map.weights[1] - 0.35) <= 0.01);
  CHECK_FALSE(map.degenerate);
  CHECK(map.all_positive);
  // Upper triangular in the interference order with the sign pattern of a degraded BC.
  CHECK(map.a(1, 0) == 0.0);
  CHECK(map.a(0, 0) > 0.0);
  CHECK(map.a(1, 1) > 0.0);
  CHECK(map.a(0, 1) <= 0.0);
}

TEST_CASE("weight map closed forms at Q = (3, 7)") {
  const Game g = testing::paper_adbc();
  const auto map = weight_map_gamma_to_r(g, ParetoWeights({0.4, 0.6}), scalars({3.0, 7.0}));
  // A entries from the scalar rate formulas.
  CHECK(map.a(0, 0) == doctest::Approx(3.0 / 4.0));
  CHECK(map.a(0, 1) == doctest::Approx(3.0 * (1.0 / 13.0 - 1.0 / 6.0)));
  CHECK(map.a(1, 1) == doctest::Approx(7.0 / 13.0));
  CHECK(map.eta == doctest::Approx(0.6));
  const double ratio = 2.0 / 3.0 - (4.0 * 7.0) / (13.0 * 6.0);
  CHECK(map.weights[0] / map.weights[1] == doctest::Approx(ratio));
  CHECK(two_user_weight_ratio(3.0, 7.0, 1.0, 3.0, 10.0, RatioDirection::gamma_to_r, 2.0 / 3.0) ==
        doctest::Approx(ratio));
}

TEST_CASE("two-user closed form") {
  const double r = two_user_weight_ratio(3.4817, 6.5183, 1.0, 3.0, 10.0, RatioDirection::gamma_to_r, 0.695);
  CHECK(r == doctest::Approx(0.348).epsilon(2e-3));
  CHECK(two_user_weight_ratio(3.4817, 6.5183, 1.0, 3.0, 10.0, RatioDirection::r_to_gamma, r) ==
        doctest::Approx(0.695));
  CHECK(two_user_weight_ratio(10.0, 0.0, 1.0, 3.0, 10.0, RatioDirection::r_to_gamma, 0.9) == doctest::Approx(0.9));
  CHECK_THROWS_AS(two_user_weight_ratio(3.0, 3.0, 1.0, 3.0, 10.0, RatioDirection::r_to_gamma, 1.0), ValidationError);
}

TEST_CASE("closed form agrees with the general map on random scalar instances") {
  sampling::Rng rng(71);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double n1 = 0.5 + 2.0 * u(rng);
    const double n2 = n1 + 3.0 * u(rng);
    const double p = 1.0 + 9.0 * u(rng);
    const Game g(testing::scalar_adbc({n1, n2}, p), Order::identity(2));
    const double q1 = p * u(rng);
    const Profile q = scalars({q1, p - q1});
    const double g1 = u(rng);
    const auto map = weight_map_gamma_to_r(g, ParetoWeights({g1, 1.0 - g1}), q);
    const double closed = two_user_weight_ratio(q1, p - q1, n1, n2, p, RatioDirection::gamma_to_r, g1 / (1.0 - g1));
    CHECK(std::abs(map.weights[0] / map.weights[1] - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("inactive users are mapped on the reduced game") {
  const Game g = testing::paper_adbc();
  const auto map = weight_map_gamma_to_r(g, ParetoWeights({0.6, 0.4}), scalars({10.0, 0.0}));
  CHECK(map.degenerate);
  CHECK(map.active == std::vector<bool>{true, false});
  CHECK(map.weights[0] == doctest::Approx(1.0));
  // The silent user sits at the largest weight that keeps it silent.
  CHECK(map.weights[0] / map.weights[1] == doctest::Approx(11.0 / 13.0));
  const auto back = weight_map_r_to_gamma(g, NoEWeights({1.0, 1.0}), scalars({10.0, 0.0}));
  CHECK(back.weights[0] == doctest::Approx(1.0));
  CHECK(back.weights[1] == doctest::Approx(0.0));
}

TEST_CASE("single user maps trivially") {
  const Game g(testing::scalar_adbc({2.0}, 5.0), Order::identity(1));
  const auto sol = pareto_solve(g, ParetoWeights({1.0}));
  CHECK(weight_map_gamma_to_r(g, ParetoWeights({1.0}), sol.profile).weights[0] == doctest::Approx(1.0));
  CHECK(weight_map_r_to_gamma(g, NoEWeights({3.0}), sol.profile).weights[0] == doctest::Approx(1.0));
}

TEST_CASE("r = (0.35, 1) maps to gamma_1 near 0.41") {
  const Game g = testing::paper_adbc();
  const NoEWeights r({0.35, 1.0});
  const auto noe = solve_noe(g, r);
  const auto map = weight_map_r_to_gamma(g, r, noe.profile);
  CHECK(std::abs(map.weights[0] - 0.41) <= 0.005);
  CHECK(map.weights[0] + map.weights[1] == doctest::Approx(1.0));
  CHECK(map.all_positive);
}

TEST_CASE("gamma to r to gamma round trip") {
  sampling::Rng rng(88);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t users = 2 + trial % 2;
    const std::size_t dim = 1 + (trial / 2) % 2;
    const Game g(testing::random_adbc(rng, users, dim, 3.0), Order::identity(users));
    std::vector<double> gv;
    for (std::size_t k = 0; k < users; ++k) gv.push_back(1.0 + static_cast<double>(k));
    const ParetoWeights gamma(gv);
    const auto sol = pareto_solve(g, gamma);
    const auto to_r = weight_map_gamma_to_r(g, gamma, sol.profile);
    REQUIRE(to_r.all_positive);
    const NoEWeights r(to_r.weights);
    // Scalar Pareto solutions are equilibria under the mapped weights.
    if (dim == 1) CHECK(certify(g, sol.profile, r).passes(1e-6));
    const auto back = weight_map_r_to_gamma(g, r, sol.profile);
    double active_mass = 0.0;
    for (std::size_t k = 0; k < users; ++k) active_mass += to_r.active[k] ? gamma[k] : 0.0;
    for (std::size_t k = 0; k < users; ++k) {
      if (to_r.active[k]) CHECK(std::abs(back.weights[k] - gamma[k] / active_mass) <= 1e-4);
    }
  }
}

TEST_CASE("singular weight matrix is an error") {
  BCChannel bc;
  bc.tx_antennas = 1;
  bc.channels = {m1(1.0), m1(0.0)};
  bc.noise = WhiteNoise{1.0};
  bc.power_budget = 2.0;
  const Game g(bc, Order::identity(2));
  // User 2 transmits but its channel is dead, so its column of A vanishes.
  CHECK_THROWS_WITH_AS(weight_map_r_to_gamma(g, NoEWeights({1.0, 1.0}), scalars({1.0, 1.0})),
                       doctest::Contains("condition number"), ValidationError);
}

TEST_CASE("equilibria are Pareto efficient under the mapped weights") {
  sampling::Rng rng(97);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t users = 2 + trial % 2;
    const Game g(testing::random_adbc(rng, users, 1 + trial % 2, 4.0), Order::identity(users));
    std::vector<double> w;
    for (std::size_t k = 0; k < users; ++k) w.push_back(1.0 - 0.2 * static_cast<double>(k));
    const NoEWeights r(w);
    const auto noe = solve_noe(g, r);
    const auto map = weight_map_r_to_gamma(g, r, noe.profile);
    const ParetoWeights gamma(map.weights);
    const auto best = pareto_solve(g, gamma);
    CHECK(weighted_sum_rate(g, noe.profile, gamma.values()) >= best.value - 1e-6);
    CHECK(pareto_kkt(g, noe.profile, gamma).max_residual() <= 1e-6);
  }
}

TEST_CASE("unordered scalar weights still give a stationary Pareto point") {
  sampling::Rng rng(98);
  for (int trial = 0; trial < 4; ++trial) {
    const Game g(testing::random_adbc(rng, 2, 1, 4.0), Order::identity(2));
    const NoEWeights r({0.6, 1.0});
    const auto noe = solve_noe(g, r);
    const auto map = weight_map_r_to_gamma(g, r, noe.profile);
    CHECK(pareto_kkt(g, noe.profile, ParetoWeights(map.weights)).max_residual() <= 1e-6);
  }
}
