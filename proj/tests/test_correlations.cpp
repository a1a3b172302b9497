#include <cmath>
#include <random>

#include "doctest.h"
#include "xcorr/correlations.hpp"
#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"
#include "xcorr/oracle.hpp"

using namespace xcorr;

namespace {
constexpr auto kDeficit = CorrelationKind::WorkDeficit;
constexpr auto kDiscord = CorrelationKind::Discord;
}  // namespace

TEST_CASE("endpoint closed forms agree with the profile") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p{u(rng), u(rng), u(rng), 0.15 + std::fabs(u(rng))};
    CHECK(std::fabs(deficit_at_zero(p) - deficit_profile(p, 0.0)) < 1e-12);
    CHECK(std::fabs(deficit_at_pi_half(p) - deficit_profile(p, kHalfPi)) < 1e-12);
    CHECK(std::fabs(discord_at_zero(p) - discord_profile(p, 0.0)) < 1e-12);
    CHECK(std::fabs(discord_at_pi_half(p) - discord_profile(p, kHalfPi)) < 1e-12);
    CHECK(std::fabs(discord_at_zero(p) - deficit_at_zero(p)) < 1e-12);
    CHECK(std::fabs(pi_half_radius(p) - pi_half_radius(thermal_xstate(p))) < 1e-12);
  }
}

TEST_CASE("trivial limits") {
  CHECK(deficit_at_zero({0.0, 0.7, 1.2, 0.5}) == 0.0);
  CHECK(discord_at_zero({0.0, 0.7, 1.2, 0.5}) == doctest::Approx(0.0).scale(1.0));
  const ModelParams hot{1.0, -0.9, 1.7, 1e9};
  CHECK(std::fabs(deficit_at_pi_half(hot)) < 1e-12);
  CHECK(std::fabs(discord_at_pi_half(hot)) < 1e-12);
  for (double theta : {0.0, 0.5, kHalfPi}) CHECK(std::fabs(deficit_profile(hot, theta)) < 1e-12);
}

TEST_CASE("high-temperature ordering of the endpoint branches") {
  // Delta_0 wins iff Jz^2 + B^2 > J^2.
  const ModelParams above{1.0, 0.8, 0.8, 200.0};
  const ModelParams below{1.0, 0.5, 0.5, 200.0};
  CHECK(deficit_at_zero(above) < deficit_at_pi_half(above));
  CHECK(deficit_at_zero(below) > deficit_at_pi_half(below));
}

TEST_CASE("optimisation at the reference points") {
  const auto interior = optimize({1.0, -0.9, 1.7, 0.5}, kDeficit);
  CHECK(interior.branch == Branch::Interior);
  CHECK(interior.optimal_angle == doctest::Approx(0.40953).epsilon(2e-4));
  CHECK(interior.value <= interior.branch_values.at_zero);
  CHECK(interior.value <= interior.branch_values.at_pi_half);

  const auto zero = optimize({1.0, -0.9, 1.7, 0.65}, kDeficit);
  CHECK(zero.branch == Branch::Zero);
  CHECK(zero.optimal_angle == 0.0);

  const auto split = optimize({1.0, 1.02, 1.0, 0.85361}, kDiscord);
  CHECK(nats_to_bits(split.value) == doctest::Approx(0.13281).epsilon(1e-3));
  CHECK(optimize({1.0, 1.02, 1.0, 0.8}, kDiscord).branch == Branch::Interior);
}

TEST_CASE("branch error of the zero-angle approximation") {
  const auto r = optimize({1.0, -0.9, 1.7, 0.45}, kDeficit);
  const double err = (r.branch_values.at_zero - r.value) / r.value;
  CHECK(err == doctest::Approx(0.0104).epsilon(0.05));
}

TEST_CASE("nonnegativity and agreement with the matrix oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> j(-2.0, 2.0), b(0.0, 2.5), t(0.15, 2.0);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p{1.0, j(rng), b(rng), t(rng)};
    for (auto kind : {kDeficit, kDiscord}) {
      const auto fast = optimize(p, kind);
      CHECK(fast.value >= -1e-12);
      const auto slow = oracle::brute_force_correlation(thermal_xstate(p), objective_for(kind));
      CHECK(std::fabs(fast.value - slow.value) < 1e-8);
    }
  }
}

TEST_CASE("tie at the branch-swap line resolves to zero with a flag") {
  // At B = 0 and Jz = J the two endpoints coincide by symmetry.
  const auto r = optimize({1.0, 1.0, 0.0, 0.7}, kDeficit);
  CHECK(r.branch == Branch::Zero);
  CHECK(r.degenerate);
}

TEST_CASE("interior stationary points come in the expected pattern") {
  // Both endpoints are minima before the jump: a single interior maximum
  // separates them, then a minimum-maximum pair is born.
  const auto before = interior_stationary_points({1.0, -1.5, 1.9, 0.645}, kDeficit);
  CHECK(before.empty());
  const auto after = interior_stationary_points({1.0, -1.5, 1.9, 0.628}, kDeficit);
  REQUIRE(after.size() == 2);
  CHECK_FALSE(after[0].minimum);
  CHECK(after[1].minimum);
}

TEST_CASE("profile rows and the discord-deficit identity") {
  const ModelParams p{1.0, -0.9, 1.7, 0.5};
  const XState s = thermal_xstate(p);
  for (double theta : {0.0, 0.3, 1.0, kHalfPi}) {
    const auto row = profile_row(p, theta);
    const double u = (s.a - s.d) * std::cos(theta);
    const double rhs = row.deficit - xlogx(s.a + s.b) - xlogx(s.b + s.d) +
                       xlogx(0.5 * (1 + u)) + xlogx(0.5 * (1 - u));
    CHECK(std::fabs(row.discord - rhs) < 1e-12);
  }
}

TEST_CASE("heat-capacity relation away from transitions") {
  CHECK(deficit_heat_relation({1.0, -0.9, 1.7, 0.8}) < 1e-5);
  CHECK(deficit_heat_relation({1.0, -0.9, 1.7, 0.4}) < 1e-5);
  CHECK(deficit_heat_relation({1.0, -0.9, 1.7, 1e3}) < 1e-5);
  CHECK_THROWS_AS(deficit_heat_relation({1.0, -0.9, 1.7, 0.5826}), Error);
}
