#pragma once

// Temperature scans at fixed field, detection and classification of
// sudden changes of the optimal angle, and the fits used to characterise
// them (critical exponent, Taylor/Landau coefficients, derivative jumps).

#include <cstddef>
#include <optional>
#include <vector>

#include "xcorr/correlations.hpp"
#include "xcorr/phasemap.hpp"

namespace xcorr {

struct PathSample {
  double T;
  double angle;
  double value;  // nats
  Branch branch;
};

struct PathScan {
  double J = 1.0;
  double Jz = 0.0;
  double B = 0.0;
  CorrelationKind kind = CorrelationKind::WorkDeficit;
  std::vector<PathSample> samples;  // strictly decreasing T
};

/// Angle change between neighbouring samples that triggers refinement.
inline constexpr double kJumpRefineThreshold = 0.01;
/// Temperature resolution of the refined brackets.
inline constexpr double kRefineResolution = 1e-6;

/// n >= 200 samples from T_hi down to T_lo, refined by bisection around
/// every branch change or angle step above kJumpRefineThreshold.
PathScan scan_path(double J, double Jz, double B, double T_lo, double T_hi,
                   std::size_t n, CorrelationKind kind);

enum class TransitionKind { BranchSwapJump, ContinuousSecondOrder, CombinedFirstOrder };
enum class TransitionSide { FromZero, FromPiHalf };

const char* to_string(TransitionKind kind) noexcept;
const char* to_string(TransitionSide side) noexcept;

struct ExponentFit {
  double beta;
  double amplitude;   // order parameter / (|T - T_c|/|J|)^beta
  double r_squared;   // linear fit of order^2 against |T - T_c|
  double window_frac;
  std::size_t points;
};

struct TransitionReport {
  TransitionKind kind;
  double T_c;
  double angle_jump;
  TransitionSide side;
  Branch above;  // branch on the high-temperature side
  Branch below;
  std::optional<ExponentFit> fit;
};

/// One report per transition, ordered by decreasing T_c. Throws
/// NoTransitionFound when the scan never changes branch.
std::vector<TransitionReport> classify(const PathScan& scan);

/// Power-law fit of theta (FromZero) or pi/2 - theta (FromPiHalf) against
/// |T - T_c| on 40 log-spaced offsets within window_frac * T_c of a
/// continuous transition.
ExponentFit fit_exponent(const PathScan& scan, const TransitionReport& report,
                         double window_frac);

enum class TaylorOrder { Taylor, Sextic };

/// Taylor mode halves the window until the fit residual drops below this.
inline constexpr double kTaylorResidualTarget = 1e-11;
inline constexpr double kMinTaylorWindow = 0.005;

struct TaylorOptions {
  TaylorOrder order = TaylorOrder::Taylor;
  double window = 0.15;    // rad
  std::size_t samples = 241;
};

/// Even-polynomial coefficients of the correlation profile about an
/// endpoint, f = c0 + c2 t^2 + c4 t^4 + c6 t^6 + ..., t = |theta - anchor|.
/// Taylor mode fits through t^16 so that the low coefficients are accurate;
/// Sextic mode is the plain cubic-in-t^2 Landau form.
struct TaylorCoeffs {
  Anchor anchor;
  TaylorOrder order;
  double window;  // window actually fitted
  double c0;
  double c2;
  double c4;
  double c6;
  double max_residual;
  double closed_form_c2;  // endpoint curvature / 2
  std::optional<double> alpha1;  // Sextic: c2/c6
  std::optional<double> alpha2;  // Sextic: c4/c6
  std::vector<double> extrema;   // Sextic: stationary t inside the window
};

TaylorCoeffs taylor_coeffs(const ModelParams& p, CorrelationKind kind,
                           Anchor anchor, const TaylorOptions& options = {});

struct DerivativeJumps {
  double d1_jump;
  double d2_jump;
  double d1_noise;
  double d2_noise;
};

/// One-sided first and second T-derivatives of the optimised value on both
/// sides of T_c (step 1e-4) and their differences.
DerivativeJumps derivative_discontinuities(const PathScan& scan,
                                           const TransitionReport& report);

/// Temperature in (T_lo, T_hi) at which interior stationary points first
/// appear; exactly one end of the window must have them.
double pair_birth_temperature(double J, double Jz, double B,
                              CorrelationKind kind, double T_lo, double T_hi);

}  // namespace xcorr
