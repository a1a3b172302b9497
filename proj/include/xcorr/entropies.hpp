#pragma once

// Closed-form entropies of the X state measured on qubit B with the
// projectors V(theta, phi)|k><k|V^dagger. None of them depends on phi, so
// only the polar angle appears here.

#include <array>

#include "xcorr/model.hpp"

namespace xcorr {

enum class Objective { PostEntropy, ConditionalEntropy };

/// Polar measurement angle in the canonical range [0, pi/2].
class MeasurementAngle {
 public:
  /// Throws InvalidArgument outside [0, pi/2] (1e-12 slack, clamped).
  explicit MeasurementAngle(double theta);

  static MeasurementAngle zero() noexcept { return MeasurementAngle(); }
  static MeasurementAngle pi_half() noexcept;

  double radians() const noexcept { return theta_; }

 private:
  MeasurementAngle() = default;
  double theta_ = 0.0;
};

struct PostMeasurementEigenvalues {
  std::array<double, 4> values;  // (L1, L2, L3, L4)
};

PostMeasurementEigenvalues post_eigs(const XState& s, MeasurementAngle m);

/// Entropy of the nonselectively measured state, S(rho-bar).
double post_entropy(const XState& s, MeasurementAngle m);

/// Entropy of qubit B after the measurement, S(rho-bar_B).
double post_marginal_entropy(const XState& s, MeasurementAngle m);

/// Average measurement-based conditional entropy S(A|{Pi_k}).
double conditional_entropy(const XState& s, MeasurementAngle m);

/// S(rho_B) before measurement.
double reduced_entropy(const XState& s);

/// S(rho) from the eigenvalues (a, b+v, b-v, d).
double state_entropy(const XState& s);

double objective_value(const XState& s, Objective objective,
                       MeasurementAngle m);

/// Analytic d/dtheta of the objective. Valid for any real theta.
double objective_slope(const XState& s, Objective objective, double theta);

/// r = sqrt((a-d)^2 + 4 v^2) and 1 - r evaluated without cancellation.
double pi_half_radius(const XState& s) noexcept;
double one_minus_pi_half_radius(const XState& s) noexcept;

/// d/dtheta at both endpoints by one-sided fourth-order differences
/// (step 1e-4); both vanish for every state.
struct EndpointSlopes {
  double at_zero;
  double at_pi_half;
};

EndpointSlopes endpoint_derivative_check(
    const XState& s, Objective objective = Objective::PostEntropy);

}  // namespace xcorr
