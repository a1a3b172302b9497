#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "xcorr/entropies.hpp"
#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"
#include "xcorr/oracle.hpp"

using namespace xcorr;

namespace {

XState draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& x : w) total += (x = u(rng) + 1e-3);
  XState s{w[0] / total, 0.0, w[1] / total, 0.0};
  s.b = 0.5 * (1.0 - s.a - s.d);
  s.v = (u(rng) * 2.0 - 1.0) * s.b;
  return s;
}

// The fourfold m,n sum for S(rho-bar), written out term by term.
double literal_post_entropy(const XState& s, double theta) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  double sum = 0.0;
  for (int m = 0; m <= 1; ++m)
    for (int n = 0; n <= 1; ++n) {
      const double sm = m == 0 ? 1.0 : -1.0;
      const double sgn = n == 0 ? 1.0 : -1.0;
      const double inner = s.a - s.d + sm * (1.0 - 4.0 * s.b) * c;
      const double x = 1.0 + sm * (s.a - s.d) * c +
                       sgn * std::sqrt(inner * inner + 4.0 * s.v * s.v * sn * sn);
      sum += xlogx(x);
    }
  return 2.0 * kLn2 - 0.25 * sum;
}

const ModelParams kFig2{1.0, -0.9, 1.7, 0.5};

}  // namespace

TEST_CASE("measurement angle range") {
  CHECK(MeasurementAngle(0.3).radians() == 0.3);
  CHECK(MeasurementAngle(kHalfPi + 5e-13).radians() == kHalfPi);
  CHECK_THROWS_AS(MeasurementAngle(-0.01), Error);
  CHECK_THROWS_AS(MeasurementAngle(2.0), Error);
  CHECK(MeasurementAngle::pi_half().radians() == kHalfPi);
}

TEST_CASE("post-measurement eigenvalues at the endpoints") {
  const XState s = thermal_xstate(kFig2);
  auto e0 = post_eigs(s, MeasurementAngle::zero()).values;
  std::array<double, 4> want{s.a, s.b, s.b, s.d};
  std::sort(e0.begin(), e0.end());
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 4; ++i) CHECK(e0[i] == doctest::Approx(want[i]).epsilon(1e-14));

  const double r = pi_half_radius(s);
  const auto e1 = post_eigs(s, MeasurementAngle::pi_half()).values;
  CHECK(e1[0] == doctest::Approx((1 + r) / 4).epsilon(1e-14));
  CHECK(e1[1] == doctest::Approx((1 - r) / 4).epsilon(1e-12));
  CHECK(e1[2] == doctest::Approx((1 + r) / 4).epsilon(1e-14));
  CHECK(e1[3] == doctest::Approx((1 - r) / 4).epsilon(1e-12));
}

TEST_CASE("eigenvalues sum to one and match the oracle for any phi") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, kHalfPi);
  for (int i = 0; i < 100; ++i) {
    const XState s = draw(rng);
    const double theta = ang(rng);
    auto e = post_eigs(s, MeasurementAngle(theta)).values;
    CHECK(e[0] + e[1] + e[2] + e[3] == doctest::Approx(1.0).epsilon(1e-14));
    std::sort(e.begin(), e.end(), std::greater<>());
    const auto o = oracle::eig4(oracle::post_measure(oracle::assemble_state(s), theta, 4.0 * theta));
    for (int k = 0; k < 4; ++k) CHECK(std::fabs(e[k] - o.values[k]) < 1e-12);
  }
}

TEST_CASE("closed-form post entropy equals the literal fourfold sum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, kHalfPi);
  for (int i = 0; i < 100; ++i) {
    const XState s = draw(rng);
    const double theta = ang(rng);
    CHECK(std::fabs(post_entropy(s, MeasurementAngle(theta)) - literal_post_entropy(s, theta)) <
          1e-12);
  }
}

TEST_CASE("interior minimum of the post entropy at the reference point") {
  const XState s = thermal_xstate(kFig2);
  CHECK(nats_to_bits(post_entropy(s, MeasurementAngle(0.40953))) ==
        doctest::Approx(1.57487).epsilon(5e-6));
  const double dephased = -xlogx(s.a) - 2 * xlogx(s.b) - xlogx(s.d);
  CHECK(post_entropy(s, MeasurementAngle::zero()) == doctest::Approx(dephased).epsilon(1e-14));
}

TEST_CASE("theta -> pi - theta symmetry through the oracle") {
  const XState s = thermal_xstate(kFig2);
  for (double theta : {0.1, 0.5, 1.2}) {
    const double a = oracle::objective(s, Objective::PostEntropy, theta);
    const double b = oracle::objective(s, Objective::PostEntropy, kPi - theta);
    CHECK(std::fabs(a - b) < 1e-12);
  }
}

TEST_CASE("marginal and reduced entropies") {
  const XState s = thermal_xstate(kFig2);
  CHECK(post_marginal_entropy(s, MeasurementAngle::pi_half()) ==
        doctest::Approx(kLn2).epsilon(1e-15));
  const XState sym{0.3, 0.2, 0.3, 0.1};
  CHECK(post_marginal_entropy(sym, MeasurementAngle(0.7)) == doctest::Approx(kLn2));
  CHECK(reduced_entropy(XState{0.25, 0.25, 0.25, 0.0}) == doctest::Approx(kLn2));
  CHECK(reduced_entropy(thermal_xstate({1.0, -0.9, 0.0, 0.7})) ==
        doctest::Approx(kLn2).epsilon(1e-14));
}

TEST_CASE("conditional entropy identities") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, kHalfPi);
  for (int i = 0; i < 50; ++i) {
    const XState s = draw(rng);
    const MeasurementAngle m(ang(rng));
    CHECK(std::fabs(conditional_entropy(s, m) -
                    (post_entropy(s, m) - post_marginal_entropy(s, m))) < 1e-12);
    CHECK(post_entropy(s, m) >= state_entropy(s) - 1e-12);
  }
}

TEST_CASE("product state conditional entropy equals the entropy of A") {
  // b^2 = a d with v = 0 is a product of diagonal single-qubit states with
  // equal populations b on the off-diagonal basis states.
  const double p = 0.8;
  const XState s{p * p, p * (1 - p), (1 - p) * (1 - p), 0.0};
  const double h = -xlogx(p) - xlogx(1 - p);
  CHECK(conditional_entropy(s, MeasurementAngle::zero()) == doctest::Approx(h).epsilon(1e-13));
}

TEST_CASE("analytic slope matches central differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.05, kHalfPi - 0.05);
  for (int i = 0; i < 50; ++i) {
    const XState s = draw(rng);
    const double theta = ang(rng);
    for (auto obj : {Objective::PostEntropy, Objective::ConditionalEntropy}) {
      const double h = 1e-5;
      const double fd = (objective_value(s, obj, MeasurementAngle(theta + h)) -
                         objective_value(s, obj, MeasurementAngle(theta - h))) /
                        (2 * h);
      CHECK(objective_slope(s, obj, theta) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("endpoint stationarity") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const XState s = draw(rng);
    for (auto obj : {Objective::PostEntropy, Objective::ConditionalEntropy}) {
      const auto d = endpoint_derivative_check(s, obj);
      CHECK(std::fabs(d.at_zero) < 1e-7);
      CHECK(std::fabs(d.at_pi_half) < 1e-7);
    }
  }
  const auto d = endpoint_derivative_check(thermal_xstate(kFig2));
  CHECK(std::fabs(d.at_zero) < 1e-7);
  CHECK(std::fabs(d.at_pi_half) < 1e-7);
}

TEST_CASE("stable one minus r") {
  const XState s = thermal_xstate({1.0, -0.9, 5.0, 0.05});
  const double r = pi_half_radius(s);
  CHECK(one_minus_pi_half_radius(s) > 0.0);
  CHECK(one_minus_pi_half_radius(s) == doctest::Approx(1.0 - r).epsilon(1e-6).scale(1e-16));
}
