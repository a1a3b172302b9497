#include "xcorr/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"

namespace xcorr {

MeasurementAngle::MeasurementAngle(double theta) {
  constexpr double kSlack = 1e-12;
  if (!std::isfinite(theta) || theta < -kSlack || theta > kHalfPi + kSlack)
    throw Error(ErrorCode::InvalidArgument,
                "measurement angle must lie in [0, pi/2]");
  theta_ = std::clamp(theta, 0.0, kHalfPi);
}

MeasurementAngle MeasurementAngle::pi_half() noexcept {
  MeasurementAngle m;
  m.theta_ = kHalfPi;
  return m;
}

namespace {

struct EigenPair {
  double plus;
  double minus;
};

// One 2x2 block of the measured state; sign = +1 gives (L1, L2) and
// sign = -1 gives (L3, L4). The smaller root comes from the product
// L+ L- = {[b(1+c) + d(1-c)][a(1+c) + b(1-c)] - v^2 s^2}/4 (c -> -c for
// sign = -1), which has no cancellation.
EigenPair block_eigs(const XState& st, double c, double s, double sign) {
  const double cs = sign * c;
  const double p = 1.0 + (st.a - st.d) * cs;
  const double lin = st.a - st.d + (1.0 - 4.0 * st.b) * cs;
  const double q = std::sqrt(lin * lin + 4.0 * st.v * st.v * s * s);
  const double plus = 0.25 * (p + q);
  if (plus <= 0.0) return {0.0, 0.0};
  const double op = 1.0 + cs;
  const double om = 1.0 - cs;
  const double product =
      0.25 * ((st.b * op + st.d * om) * (st.a * op + st.b * om) -
              st.v * st.v * s * s);
  return {plus, std::max(product / plus, 0.0)};
}

double post_entropy_raw(const XState& st, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const auto e12 = block_eigs(st, c, s, 1.0);
  const auto e34 = block_eigs(st, c, s, -1.0);
  return -(xlogx(e12.plus) + xlogx(e12.minus) + xlogx(e34.plus) +
           xlogx(e34.minus));
}

double marginal_raw(const XState& st, double theta) {
  return binary_entropy_from_bias((st.a - st.d) * std::cos(theta));
}

// sum over one block of dL/dtheta * ln L.
double block_slope_term(const XState& st, double c, double s, double sign) {
  const double cs = sign * c;
  const double lin = st.a - st.d + (1.0 - 4.0 * st.b) * cs;
  const double q = std::sqrt(lin * lin + 4.0 * st.v * st.v * s * s);
  const double dp = -sign * (st.a - st.d) * s;
  const auto eig = block_eigs(st, c, s, sign);
  auto safe_log = [](double x) {
    return std::log(std::max(x, std::numeric_limits<double>::min()));
  };
  double out = 0.25 * dp * (safe_log(eig.plus) + safe_log(eig.minus));
  if (q > 0.0) {
    const double dq =
        (lin * (-sign * (1.0 - 4.0 * st.b) * s) + 4.0 * st.v * st.v * s * c) /
        q;
    out += 0.25 * dq * (safe_log(eig.plus) - safe_log(eig.minus));
  }
  return out;
}

}  // namespace

PostMeasurementEigenvalues post_eigs(const XState& s, MeasurementAngle m) {
  const double theta = m.radians();
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const auto e12 = block_eigs(s, c, sn, 1.0);
  const auto e34 = block_eigs(s, c, sn, -1.0);
  return {{e12.plus, e12.minus, e34.plus, e34.minus}};
}

double post_entropy(const XState& s, MeasurementAngle m) {
  return post_entropy_raw(s, m.radians());
}

double post_marginal_entropy(const XState& s, MeasurementAngle m) {
  return marginal_raw(s, m.radians());
}

double conditional_entropy(const XState& s, MeasurementAngle m) {
  return post_entropy_raw(s, m.radians()) - marginal_raw(s, m.radians());
}

double reduced_entropy(const XState& s) {
  return -xlogx(s.a + s.b) - xlogx(s.b + s.d);
}

double state_entropy(const XState& s) {
  const auto l = state_eigenvalues(s);
  return shannon_entropy(l);
}

double objective_value(const XState& s, Objective objective,
                       MeasurementAngle m) {
  return objective == Objective::PostEntropy ? post_entropy(s, m)
                                             : conditional_entropy(s, m);
}

double objective_slope(const XState& s, Objective objective, double theta) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double post =
      -(block_slope_term(s, c, sn, 1.0) + block_slope_term(s, c, sn, -1.0));
  if (objective == Objective::PostEntropy) return post;
  // d S(rho-bar_B)/dtheta = (a-d) sin(theta) atanh((a-d) cos(theta)).
  const double u = (s.a - s.d) * c;
  const double marginal =
      std::fabs(u) < 1.0 ? (s.a - s.d) * sn * std::atanh(u) : 0.0;
  return post - marginal;
}

double pi_half_radius(const XState& s) noexcept {
  const double ad = s.a - s.d;
  return std::sqrt(ad * ad + 4.0 * s.v * s.v);
}

double one_minus_pi_half_radius(const XState& s) noexcept {
  // 1 - r^2 = 4[(a+b)(b+d) - v^2] when a + 2b + d = 1.
  const double r = pi_half_radius(s);
  return 4.0 * ((s.a + s.b) * (s.b + s.d) - s.v * s.v) / (1.0 + r);
}

EndpointSlopes endpoint_derivative_check(const XState& s,
                                         Objective objective) {
  constexpr double h = 1e-4;
  auto f = [&](double theta) {
    return objective == Objective::PostEntropy
               ? post_entropy_raw(s, theta)
               : post_entropy_raw(s, theta) - marginal_raw(s, theta);
  };
  auto one_sided = [&](double x0, double step) {
    return (-25.0 * f(x0) + 48.0 * f(x0 + step) - 36.0 * f(x0 + 2.0 * step) +
            16.0 * f(x0 + 3.0 * step) - 3.0 * f(x0 + 4.0 * step)) /
           (12.0 * step);
  };
  return {one_sided(0.0, h), one_sided(kHalfPi, -h)};
}

}  // namespace xcorr
