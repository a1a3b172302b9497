#pragma once

// Small numerical kernels shared by every module.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace xcorr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kLn2 = std::numbers::ln2;

/// x ln x with the continuous extension 0 ln 0 = 0. Tiny negative inputs
/// (roundoff around a vanishing eigenvalue) are treated as zero.
inline double xlogx(double x) noexcept {
  return x > 0.0 ? x * std::log(x) : 0.0;
}

/// -sum p ln p over a probability vector.
double shannon_entropy(std::span<const double> probabilities) noexcept;

/// Entropy of the binary distribution ((1+u)/2, (1-u)/2), |u| <= 1.
double binary_entropy_from_bias(double u) noexcept;

/// ln cosh(x) without overflow.
inline double log_cosh(double x) noexcept {
  const double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - kLn2;
}

/// ln |sinh(x)| without overflow; -inf at x = 0.
inline double log_abs_sinh(double x) noexcept {
  const double ax = std::fabs(x);
  return ax + std::log1p(-std::exp(-2.0 * ax)) - kLn2;
}

inline double nats_to_bits(double nats) noexcept { return nats / kLn2; }

std::vector<double> linspace(double from, double to, std::size_t count);
std::vector<double> geomspace(double from, double to, std::size_t count);

/// Bisection on a sign change of f in [lo, hi]. The caller guarantees
/// f(lo) and f(hi) have opposite signs (or one is zero).
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tolerance, int max_iterations = 200);

struct ScalarMinimum {
  double x;
  double value;
};

/// Brent's method (golden section with parabolic steps) on [lo, hi].
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo,
                             double hi, double tolerance,
                             int max_iterations = 200);

/// Worker count from XCORR_THREADS (default: hardware concurrency).
std::size_t worker_count() noexcept;

/// Runs body(i) for i in [0, n) on worker_count() threads. Every index is
/// visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace xcorr
