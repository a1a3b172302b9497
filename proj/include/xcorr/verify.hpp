#pragma once

// Seeded property suites that cross-check the closed forms against the
// matrix oracle, finite differences and high-temperature expansions.

#include <cstdint>
#include <string>
#include <vector>

namespace xcorr::verify {

struct SuiteResult {
  std::string name;
  bool passed;
  double max_error;
  double tolerance;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

std::vector<SuiteResult> run_all(std::uint64_t seed = kDefaultSeed);

}  // namespace xcorr::verify
