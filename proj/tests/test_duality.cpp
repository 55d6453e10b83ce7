#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bcgame/duality.hpp"
#include "bcgame/errors.hpp"
#include "helpers.hpp"

using namespace bcgame;
using namespace bcgame::linalg;
using testing::m1;
using testing::scalars;

namespace {

double max_abs_diff(const RateTuple& a, const RateTuple& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

Order random_order(sampling::Rng& rng, std::size_t k) {
  std::vector<std::size_t> seq(k);
  for (std::size_t i = 0; i < k; ++i) seq[i] = i;
  std::shuffle(seq.begin(), seq.end(), rng);
  return Order(seq);
}

void check_mac_to_bc(const MACChannel& mac, const Profile& q, const Order& order) {
  const RateTuple v = mac_sic_rates(mac, q, order);
  const BCDual dual = mac_to_bc(mac, q, order);
  CHECK(dual.order == order.reversed());
  // Rates recomputed from scratch on the dual channel.
  CHECK(max_abs_diff(bc_dpc_rates(dual.channel, dual.profile, dual.order), v) <= 1e-8);
  CHECK(total_trace(dual.profile) == doctest::Approx(total_trace(q)).epsilon(1e-9));
  for (const auto& s : dual.profile) CHECK(is_psd(s, 1e-9));
  for (std::size_t k = 0; k < mac.num_users(); ++k) CHECK(dual.channel.channels[k].isApprox(mac.channels[k].transpose()));
}

}  // namespace

TEST_CASE("scalar MAC to BC example") {
  const MACChannel mac = testing::scalar_mac({1.0, 2.0}, 1.0, 2.0);
  const Order order = Order::identity(2);
  const BCDual dual = mac_to_bc(mac, scalars({1.0, 1.0}), order);
  CHECK(std::abs(dual.profile[0](0, 0) - 1.5) <= 1e-9);
  CHECK(std::abs(dual.profile[1](0, 0) - 0.5) <= 1e-9);
  CHECK(dual.order.sequence() == std::vector<std::size_t>{1, 0});
  CHECK(dual.report.max_rate_delta() <= 1e-9);
  const RateTuple v = mac_sic_rates(mac, scalars({1.0, 1.0}), order);
  CHECK(v[0] == doctest::Approx(std::log(2.0)));
  CHECK(v[1] == doctest::Approx(std::log(3.0)));

  const MACDual back = bc_to_mac(dual.channel, dual.profile, dual.order);
  CHECK(std::abs(back.profile[0](0, 0) - 1.0) <= 1e-9);
  CHECK(std::abs(back.profile[1](0, 0) - 1.0) <= 1e-9);
  CHECK(back.order == order);
}

TEST_CASE("single user transforms are the identity up to transposition") {
  sampling::Rng rng(3);
  const MACChannel mac = testing::random_mac(rng, 1, 3, 2, 4.0);
  Profile q = sampling::random_feasible_profile(rng, {2}, 4.0, true);
  const BCDual dual = mac_to_bc(mac, q, Order::identity(1));
  // Same power, same rate, same eigenvalues of the effective channel Gram.
  CHECK(dual.profile[0].trace() == doctest::Approx(q[0].trace()));
  check_mac_to_bc(mac, q, Order::identity(1));
}

TEST_CASE("random scalar instances preserve rates and power") {
  sampling::Rng rng(21);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t users = 2 + trial % 3;
    std::vector<double> gains;
    for (std::size_t k = 0; k < users; ++k) gains.push_back(u(rng));
    const MACChannel mac = testing::scalar_mac(gains, u(rng), 5.0);
    const Profile q = sampling::random_feasible_profile(rng, std::vector<std::size_t>(users, 1), 5.0);
    check_mac_to_bc(mac, q, random_order(rng, users));
  }
}

TEST_CASE("random matrix instances preserve rates and power") {
  sampling::Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t users = 2 + trial % 2;
    const std::size_t nr = 2 + trial % 2;
    const std::size_t nk = 1 + trial % nr;
    const MACChannel mac = testing::random_mac(rng, users, nr, nk, 6.0, 0.5 + 0.1 * trial);
    const Profile q = sampling::random_feasible_profile(rng, std::vector<std::size_t>(users, nk), 6.0);
    check_mac_to_bc(mac, q, random_order(rng, users));
  }
}

TEST_CASE("round trip MAC to BC to MAC") {
  sampling::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t users = 2 + trial % 2;
    const MACChannel mac = testing::random_mac(rng, users, 2, 2, 3.0);
    const Order order = random_order(rng, users);
    const Profile q = sampling::random_feasible_profile(rng, std::vector<std::size_t>(users, 2), 3.0);
    const BCDual bc = mac_to_bc(mac, q, order);
    const MACDual back = bc_to_mac(bc.channel, bc.profile, bc.order);
    CHECK(back.order == order);
    CHECK(max_abs_diff(mac_sic_rates(back.channel, back.profile, back.order), mac_sic_rates(mac, q, order)) <= 1e-8);
    CHECK(total_trace(back.profile) == doctest::Approx(total_trace(q)).epsilon(1e-9));
  }
}

TEST_CASE("colored-noise BC is whitened before the transform") {
  sampling::Rng rng(24);
  const BCChannel bc = testing::random_adbc(rng, 2, 2, 4.0);
  const Order order = Order::identity(2);
  const Profile s = sampling::random_feasible_profile(rng, {2, 2}, 4.0);
  const MACDual mac = bc_to_mac(bc, s, order);
  CHECK(max_abs_diff(mac_sic_rates(mac.channel, mac.profile, mac.order), bc_dpc_rates(bc, s, order)) <= 1e-8);
  CHECK(total_trace(mac.profile) == doctest::Approx(total_trace(s)).epsilon(1e-9));
}

TEST_CASE("dual game swaps kind and reverses the order") {
  const Game g = testing::paper_adbc();
  const Game d = dual_game(g);
  CHECK_FALSE(d.is_broadcast());
  CHECK(d.order().sequence() == std::vector<std::size_t>{1, 0});
  CHECK(d.budget() == doctest::Approx(10.0));
}

TEST_CASE("a sum-power equilibrium is an individual-power equilibrium") {
  sampling::Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Game g(testing::random_adbc(rng, 2 + trial % 2, 2, 4.0), Order::identity(2 + trial % 2));
    const auto noe = solve_noe(g, NoEWeights(std::vector<double>(g.num_users(), 1.0)));
    const Prop5Report rep = verify_prop5(g, noe.profile);
    CHECK(rep.holds(1e-6));
    for (std::size_t k = 0; k < g.num_users(); ++k)
      CHECK(rep.induced_powers[k] == doctest::Approx(noe.profile[k].trace()));
  }
}

TEST_CASE("individual-power solve recovers a known equilibrium") {
  const Game g = testing::paper_adbc();
  const Profile ne = solve_individual_ne(g, {3.0, 7.0});
  CHECK(ne[0](0, 0) == doctest::Approx(3.0));
  CHECK(ne[1](0, 0) == doctest::Approx(7.0));
  CHECK_THROWS_AS(solve_individual_ne(g, {3.0}), ValidationError);
}

TEST_CASE("an unsaturated profile is not a coupled equilibrium") {
  const Game g = testing::paper_adbc();
  const Prop5Report rep = verify_prop5(g, scalars({5.0, 3.0}));
  CHECK(rep.max_gap() > 0.1);
}

TEST_CASE("scaled coupled constraints keep the equilibrium") {
  sampling::Rng rng(41);
  const Game g(testing::random_adbc(rng, 3, 2, 5.0), Order::identity(3));
  const auto noe = solve_noe(g, NoEWeights({1.0, 1.5, 2.0}));
  std::vector<double> powers;
  for (const auto& q : noe.profile) powers.push_back(q.trace());
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::vector<ScalingWeights> alphas;
  for (int i = 0; i < 50; ++i) alphas.emplace_back(std::vector<double>{u(rng), u(rng), u(rng)});
  alphas.emplace_back(std::vector<double>{1e12, 1.0, 1e-6});
  const Prop6Report rep = verify_prop6(g, noe.profile, alphas, powers);
  CHECK(rep.entries.size() == 51);
  CHECK(rep.holds(1e-6));
  CHECK_THROWS_AS(ScalingWeights({1.0, 0.0}), ValidationError);
}

TEST_CASE("scalar MAC equilibrium maps to a BC equilibrium") {
  sampling::Rng rng(51);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t users = 2 + trial % 2;
    std::vector<double> gains;
    for (std::size_t k = 0; k < users; ++k) gains.push_back(u(rng));
    const MACChannel mac = testing::scalar_mac(gains, 1.0, 4.0);
    const Game g(mac, Order::identity(users));
    const auto noe = solve_noe(g, NoEWeights(std::vector<double>(users, 1.0)));
    REQUIRE(noe.certificate.passes(1e-6));
    const BCDual bc = mac_to_bc(mac, noe.profile, g.order());
    CHECK(certify_gne(Game(bc.channel, bc.order), bc.profile).certificate.passes(1e-5));
  }
}

TEST_CASE("MIMO MAC equilibrium keeps its rates in the dual BC") {
  sampling::Rng rng(52);
  const MACChannel mac = testing::random_mac(rng, 2, 2, 2, 4.0);
  const Game g(mac, Order::identity(2));
  const auto noe = solve_noe(g, NoEWeights({1.0, 1.0}));
  const BCDual bc = mac_to_bc(mac, noe.profile, g.order());
  CHECK(max_abs_diff(Game(bc.channel, bc.order).rates(bc.profile), noe.rates) <= 1e-8);
  // The transformed covariances need not be unilateral best responses in the BC.
  const auto cert = certify_gne(Game(bc.channel, bc.order), bc.profile).certificate;
  CHECK(cert.power_residual <= 1e-9);
}

TEST_CASE("rate drift is a verification error") {
  MACChannel mac = testing::scalar_mac({1.0, 2.0}, 1.0, 2.0);
  // A negative tolerance can never be met.
  CHECK_NOTHROW(mac_to_bc(mac, scalars({1.0, 1.0}), Order::identity(2), 1e-8));
  CHECK_THROWS_AS(mac_to_bc(mac, scalars({1.0, 1.0}), Order::identity(2), -1.0), VerificationError);
}
