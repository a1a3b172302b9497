#pragma once

// One-way work deficit and quantum discord of the thermal X state, built
// from the two endpoint branches (theta = 0, pi/2) and any interior minimum
// of the measurement-angle profile.

#include <optional>
#include <vector>

#include "xcorr/entropies.hpp"
#include "xcorr/model.hpp"

namespace xcorr {

enum class CorrelationKind { WorkDeficit, Discord };
enum class Branch { Zero, PiHalf, Interior };

const char* to_string(CorrelationKind kind) noexcept;
const char* to_string(Branch branch) noexcept;

/// Post-measurement entropy drives the work deficit; the conditional
/// entropy drives the discord.
constexpr Objective objective_for(CorrelationKind kind) noexcept {
  return kind == CorrelationKind::WorkDeficit ? Objective::PostEntropy
                                              : Objective::ConditionalEntropy;
}

struct BranchValues {
  double at_zero = 0.0;
  double at_pi_half = 0.0;
  std::optional<double> interior;
  std::optional<double> interior_angle;
};

struct CorrelationResult {
  double value = 0.0;  // nats
  double optimal_angle = 0.0;
  Branch branch = Branch::Zero;
  BranchValues branch_values;
  CorrelationKind kind = CorrelationKind::WorkDeficit;
  bool degenerate = false;  // at_zero and at_pi_half tie (branch reported Zero)
};

/// Values closer than this are treated as equal; the smaller angle wins.
inline constexpr double kBranchTieTolerance = 1e-12;

/// Delta(theta) = S(rho-bar) - S(rho).
double deficit_profile(const ModelParams& p, double theta);
double deficit_at_zero(const ModelParams& p);
double deficit_at_pi_half(const ModelParams& p);

/// r from the Boltzmann factors directly,
/// r = (2/Z) [e^{Jz/T} sinh^2(B/T) + e^{-Jz/T} sinh^2(J/T)]^{1/2}.
double pi_half_radius(const ModelParams& p);

/// Q(theta) = S(A|{Pi}) - S(rho) + S(rho_B).
double discord_profile(const ModelParams& p, double theta);
double discord_at_zero(const ModelParams& p);
double discord_at_pi_half(const ModelParams& p);

double correlation_profile(const ModelParams& p, CorrelationKind kind,
                           double theta);

/// Every column of the `profile` CLI output for one angle, in nats.
struct ProfileRow {
  double theta;
  double post_entropy;
  double conditional_entropy;
  double deficit;
  double discord;
};

ProfileRow profile_row(const ModelParams& p, double theta);

struct StationaryPoint {
  double theta;
  double objective;  // S-tilde or S-bar at theta
  bool minimum;
};

/// Interior stationary points of the objective profile on (0, pi/2): sign
/// changes of the analytic slope on a grid (the endpoint signs come from the
/// closed-form curvatures), each refined by bisection.
std::vector<StationaryPoint> interior_stationary_points(const ModelParams& p,
                                                        CorrelationKind kind,
                                                        int grid_n = 512);

CorrelationResult optimize(const ModelParams& p, CorrelationKind kind);

/// |T dDelta/dT - (C~ - C)|, where C~ is T dS~/dT at the frozen optimal
/// angle. Throws NearTransition within 1e-3 |J| of a branch change.
double deficit_heat_relation(const ModelParams& p);

}  // namespace xcorr
