#include "xcorr/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"
#include "xcorr/phasemap.hpp"

namespace xcorr {

const char* to_string(CorrelationKind kind) noexcept {
  return kind == CorrelationKind::WorkDeficit ? "deficit" : "discord";
}

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::Zero:
      return "zero";
    case Branch::PiHalf:
      return "pi-half";
    case Branch::Interior:
      return "interior";
  }
  return "unknown";
}

namespace {

// Correlation = objective - offset.
double offset(const XState& s, CorrelationKind kind) {
  return kind == CorrelationKind::WorkDeficit
             ? state_entropy(s)
             : state_entropy(s) - reduced_entropy(s);
}

// ln 2 + H((1+r)/2) written as the entropy of {(1+-r)/4, (1+-r)/4}.
double pi_half_post_entropy(double r) {
  const double one_minus = 1.0 - r;
  return kLn2 - xlogx(0.5 * (1.0 + r)) - xlogx(0.5 * one_minus);
}

}  // namespace

double deficit_profile(const ModelParams& p, double theta) {
  const XState s = thermal_xstate(p);
  return post_entropy(s, MeasurementAngle(theta)) - state_entropy(s);
}

double deficit_at_zero(const ModelParams& p) {
  // 2/Z [x sinh x - ln(cosh x) cosh x] e^{-Jz/2T}, x = J/T, i.e.
  // 2 (v x - b ln cosh x) in terms of the state entries.
  const XState s = thermal_xstate(p);
  const double x = p.J / p.T;
  return 2.0 * (s.v * x - s.b * log_cosh(x));
}

double pi_half_radius(const ModelParams& p) {
  validate(p);
  const double t1 = p.Jz / p.T + 2.0 * log_abs_sinh(p.B / p.T);
  const double t2 = -p.Jz / p.T + 2.0 * log_abs_sinh(p.J / p.T);
  const double hi = std::max(t1, t2);
  if (hi == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_sum = hi + std::log1p(std::exp(std::min(t1, t2) - hi));
  return std::exp(kLn2 - partition_function(p).log_value + 0.5 * log_sum);
}

double deficit_at_pi_half(const ModelParams& p) {
  return pi_half_post_entropy(pi_half_radius(p)) - thermo_entropy(p);
}

double discord_profile(const ModelParams& p, double theta) {
  const XState s = thermal_xstate(p);
  return conditional_entropy(s, MeasurementAngle(theta)) - offset(s, CorrelationKind::Discord);
}

double discord_at_zero(const ModelParams& p) {
  validate(p);
  const double x = p.J / p.T;
  const double numerator = x * std::tanh(x) - log_cosh(x);
  // (1 + e^z)^{-1}, z = Jz/T + ln cosh(B/T) - ln cosh(J/T)
  const double z = p.Jz / p.T + log_cosh(p.B / p.T) - log_cosh(x);
  const double weight =
      z > 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
  return numerator * weight;
}

double discord_at_pi_half(const ModelParams& p) {
  const XState s = thermal_xstate(p);
  const double r = pi_half_radius(s);
  const double one_minus = one_minus_pi_half_radius(s);
  return xlogx(s.a) + xlogx(s.d) + xlogx(s.b + s.v) + xlogx(s.b - s.v) -
         xlogx(s.a + s.b) - xlogx(s.b + s.d) - xlogx(0.5 * (1.0 + r)) -
         xlogx(0.5 * one_minus);
}

double correlation_profile(const ModelParams& p, CorrelationKind kind,
                           double theta) {
  return kind == CorrelationKind::WorkDeficit ? deficit_profile(p, theta)
                                              : discord_profile(p, theta);
}

ProfileRow profile_row(const ModelParams& p, double theta) {
  const XState s = thermal_xstate(p);
  const MeasurementAngle m(theta);
  const double post = post_entropy(s, m);
  const double cond = conditional_entropy(s, m);
  return {m.radians(), post, cond, post - offset(s, CorrelationKind::WorkDeficit),
          cond - offset(s, CorrelationKind::Discord)};
}

std::vector<StationaryPoint> interior_stationary_points(const ModelParams& p,
                                                        CorrelationKind kind,
                                                        int grid_n) {
  if (grid_n < 8)
    throw Error(ErrorCode::InvalidArgument, "stationary-point grid too small");
  const XState s = thermal_xstate(p);
  const Objective obj = objective_for(kind);
  const auto n = static_cast<std::size_t>(grid_n);

  // Just inside the endpoints the slope has the sign of +S''(0) and
  // -S''(pi/2); this keeps minima hugging an endpoint visible.
  const double k0 = curvature(p, kind, Anchor::Zero);
  const double k1 = curvature(p, kind, Anchor::PiHalf);
  const double sign0 = k0 < 0.0 ? -1.0 : 1.0;
  const double sign1 = k1 > 0.0 ? -1.0 : 1.0;

  auto slope = [&](double theta) {
    if (theta <= 0.0) return sign0;
    if (theta >= kHalfPi) return sign1;
    return objective_slope(s, obj, theta);
  };
  auto sign_of = [](double x) { return x < 0.0 ? -1.0 : 1.0; };

  std::vector<double> grid(n + 1);
  std::vector<double> signs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = kHalfPi * static_cast<double>(i) / static_cast<double>(n);
    signs[i] = sign_of(slope(grid[i]));
  }
  signs[0] = sign0;
  signs[n] = sign1;

  std::vector<StationaryPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (signs[i] == signs[i + 1]) continue;
    const double theta = bisect(slope, grid[i], grid[i + 1], 1e-15);
    if (theta <= 0.0 || theta >= kHalfPi) continue;
    out.push_back({theta, objective_value(s, obj, MeasurementAngle(theta)),
                   signs[i] < 0.0});
  }
  return out;
}

CorrelationResult optimize(const ModelParams& p, CorrelationKind kind) {
  const XState s = thermal_xstate(p);
  CorrelationResult result;
  result.kind = kind;
  auto& bv = result.branch_values;
  if (kind == CorrelationKind::WorkDeficit) {
    bv.at_zero = deficit_at_zero(p);
    bv.at_pi_half = deficit_at_pi_half(p);
  } else {
    bv.at_zero = discord_at_zero(p);
    bv.at_pi_half = discord_at_pi_half(p);
  }

  const double shift = offset(s, kind);
  for (const auto& sp : interior_stationary_points(p, kind)) {
    if (!sp.minimum) continue;
    const double value = sp.objective - shift;
    if (!bv.interior || value < *bv.interior - kBranchTieTolerance) {
      bv.interior = value;
      bv.interior_angle = sp.theta;
    }
  }

  // Candidates in increasing angle; a later one must win by more than the
  // tie tolerance.
  result.value = bv.at_zero;
  result.optimal_angle = 0.0;
  result.branch = Branch::Zero;
  if (bv.interior && *bv.interior < result.value - kBranchTieTolerance) {
    result.value = *bv.interior;
    result.optimal_angle = *bv.interior_angle;
    result.branch = Branch::Interior;
  }
  if (bv.at_pi_half < result.value - kBranchTieTolerance) {
    result.value = bv.at_pi_half;
    result.optimal_angle = kHalfPi;
    result.branch = Branch::PiHalf;
  }
  result.degenerate = result.branch == Branch::Zero &&
                      std::fabs(bv.at_zero - bv.at_pi_half) <
                          kBranchTieTolerance;
  return result;
}

double deficit_heat_relation(const ModelParams& p) {
  validate(p);
  const double guard = 1e-3 * std::max(std::fabs(p.J), 1e-300);
  const auto centre = optimize(p, CorrelationKind::WorkDeficit);
  for (double dt : {-guard, guard}) {
    ModelParams q = p;
    q.T += dt;
    if (q.T <= 0.0) continue;
    if (optimize(q, CorrelationKind::WorkDeficit).branch != centre.branch)
      throw Error(ErrorCode::NearTransition,
                  "temperature within 1e-3|J| of a branch change");
  }

  const double h = 1e-3 * p.T;
  auto derivative = [&](auto&& f) {
    auto central = [&](double step) {
      ModelParams up = p;
      ModelParams down = p;
      up.T += step;
      down.T -= step;
      return (f(up) - f(down)) / (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  };

  const double lhs = p.T * derivative([](const ModelParams& q) {
    return optimize(q, CorrelationKind::WorkDeficit).value;
  });
  // At an interior optimum dS~/dtheta = 0, so the frozen-angle derivative
  // equals the total one.
  const MeasurementAngle angle(centre.optimal_angle);
  const double c_post = p.T * derivative([&](const ModelParams& q) {
    return post_entropy(thermal_xstate(q), angle);
  });
  return std::fabs(lhs - (c_post - heat_capacity(p)));
}

}  // namespace xcorr
