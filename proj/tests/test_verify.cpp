#include "doctest.h"
#include "xcorr/error.hpp"
#include "xcorr/verify.hpp"

using namespace xcorr;

TEST_CASE("every property suite passes with the default seed") {
  const auto results = verify::run_all();
  CHECK(results.size() == verify::suite_names().size());
  for (const auto& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
    CHECK(r.max_error <= r.tolerance);
  }
}

TEST_CASE("suites are reproducible and seed-dependent only in draws") {
  const auto a = verify::run_suite("entropy-agreement", 7);
  const auto b = verify::run_suite("entropy-agreement", 7);
  CHECK(a.max_error == b.max_error);
  CHECK(verify::run_suite("entropy-agreement", 8).passed);
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(verify::run_suite("no-such-suite"), Error);
}
