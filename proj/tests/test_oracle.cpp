#include <cmath>
#include <random>

#include "doctest.h"
#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"
#include "xcorr/oracle.hpp"

using namespace xcorr;
using namespace xcorr::oracle;

namespace {
const XState kState = thermal_xstate({1.0, -0.9, 1.7, 0.5});
}

TEST_CASE("assembled state satisfies the density-matrix invariants") {
  const auto rho = assemble_state(kState);
  CHECK(rho.hermiticity_defect() < 1e-15);
  CHECK(std::fabs(rho.trace().real() - 1.0) < 1e-14);
  CHECK_NOTHROW(validate_state(rho));
  CHECK(rho(1, 2).real() == kState.v);
  CHECK(rho(0, 0).real() == kState.a);
  CHECK(rho(3, 3).real() == kState.d);
  CHECK_THROWS_AS(assemble_state(XState{0.5, 0.1, 0.1, 0.3}), Error);
}

TEST_CASE("projectors are complete and orthogonal") {
  for (double theta : {0.0, 0.4, 1.1, kPi}) {
    for (double phi : {0.0, 1.0, 5.5}) {
      const auto p0 = Projector{theta, phi, 0}.matrix();
      const auto p1 = Projector{theta, phi, 1}.matrix();
      CHECK((p0 + p1 - DenseHermitian2::identity()).max_abs() < 1e-14);
      CHECK((p0 * p1).max_abs() < 1e-14);
      CHECK((p0 * p0 - p0).max_abs() < 1e-14);
      const auto v = rotation(theta, phi);
      CHECK((v * v.adjoint() - DenseHermitian2::identity()).max_abs() < 1e-14);
    }
  }
}

TEST_CASE("Jacobi eigensolver") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    CMatrix<4> h;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        const Complex z = i == j ? Complex(g(rng), 0.0) : Complex(g(rng), g(rng));
        h(i, j) = z;
        h(j, i) = std::conj(z);
      }
    const auto es = eigh<4>(h);
    CHECK(es.orthonormal);
    for (std::size_t k = 0; k + 1 < 4; ++k) CHECK(es.values[k] >= es.values[k + 1]);
    // H V = V diag(lambda)
    CMatrix<4> lam;
    for (std::size_t k = 0; k < 4; ++k) lam(k, k) = es.values[k];
    CHECK((h * es.vectors - es.vectors * lam).max_abs() < 1e-12);
  }
  CMatrix<2> bad;
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh<2>(bad), Error);
}

TEST_CASE("outcome probabilities sum to one") {
  const auto rho = assemble_state(kState);
  const auto out = conditional_outcomes(rho, 0.7, 2.0);
  CHECK(out[0].probability + out[1].probability == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& o : out) {
    CHECK(std::fabs(o.conditional_state().trace().real() - 1.0) < 1e-12);
    CHECK(eigh<2>(o.conditional_state()).values[1] > -1e-12);
  }
}

TEST_CASE("degenerate outcomes are flagged") {
  // |00><00|: measuring B along z never yields outcome 1.
  const XState pure{1.0, 0.0, 0.0, 0.0};
  const auto out = conditional_outcomes(assemble_state(pure), 0.0, 0.0);
  CHECK(out[1].degenerate);
  CHECK_THROWS_AS(out[1].conditional_state(), Error);
  CHECK(conditional_average(out) == doctest::Approx(0.0));
}

TEST_CASE("reduced states and the entropy of a pure state") {
  const auto rho = assemble_state(kState);
  const auto rb = reduced_b(rho);
  CHECK(rb(0, 0).real() == doctest::Approx(kState.a + kState.b));
  CHECK(reduced_a(rho)(1, 1).real() == doctest::Approx(kState.b + kState.d));
  // Singlet-like pure state.
  const XState bell{0.0, 0.5, 0.0, -0.5};
  CHECK(von_neumann_entropy<4>(assemble_state(bell)) == doctest::Approx(0.0).scale(1.0));
  CHECK(von_neumann_entropy<2>(reduced_b(assemble_state(bell))) == doctest::Approx(kLn2));
}

TEST_CASE("brute-force minimisation reproduces the interior optimum") {
  const auto m = brute_force_minimize(kState, Objective::PostEntropy);
  CHECK(m.theta == doctest::Approx(0.40953).epsilon(1e-4));
  CHECK(nats_to_bits(m.value) == doctest::Approx(1.57487).epsilon(5e-6));
  CHECK_THROWS_AS(brute_force_minimize(kState, Objective::PostEntropy, 50), Error);
}
