#pragma once

// Endpoint curvatures in closed form, the (T, B) boundaries they define and
// rasterized phase diagrams.

#include <cstddef>
#include <optional>
#include <vector>

#include "xcorr/correlations.hpp"

namespace xcorr {

enum class Anchor { Zero, PiHalf };

/// Selects the printed variants of the curvature formulas. Only the
/// defaults agree with finite differences; the others exist for the
/// verification suite.
enum class CoshArgument { Temperature, Field };
enum class ConnectingSign { Plus, Minus };

struct CurvatureForm {
  CoshArgument cosh_argument = CoshArgument::Temperature;
  ConnectingSign conditional_pi_half_sign = ConnectingSign::Plus;
};

/// Second theta-derivatives of S~ and S-bar at the endpoints.
struct EndpointCurvatures {
  double post_zero;
  double post_pi_half;
  double cond_zero;
  double cond_pi_half;

  double at(Objective objective, Anchor anchor) const noexcept;
};

EndpointCurvatures curvatures(const ModelParams& p, CurvatureForm form = {});

double curvature(const ModelParams& p, CorrelationKind kind, Anchor anchor);

/// High-temperature boundary asymptote B = |J| sqrt(1 - (Jz/J)^2), absent
/// when |Jz| > |J| or J = 0.
std::optional<double> asymptote(double J, double Jz);

enum class BoundaryKind { Zero, PiHalf, ZeroPrime, BranchSwap };

const char* to_string(BoundaryKind kind) noexcept;

/// Value of the equation that defines a boundary (zero on the boundary).
/// ZeroPrime: S(theta_min) - S(0) for the lowest interior minimum; empty
/// when no interior minimum exists.
std::optional<double> boundary_function(BoundaryKind kind,
                                        CorrelationKind correlation,
                                        const ModelParams& p);

/// Same gap for an interior minimum against either endpoint.
std::optional<double> prime_gap(const ModelParams& p, CorrelationKind kind,
                                Anchor anchor);

enum class SweepAxis { Field, Temperature };

/// Fix the swept coordinate at `count` values in [from, to] and solve the
/// other one in [solve_lo, solve_hi] by scan-and-bisect.
struct Sweep {
  SweepAxis axis = SweepAxis::Field;
  double from = 0.0;
  double to = 0.0;
  std::size_t count = 1;
  double solve_lo = 0.05;
  double solve_hi = 5.0;
  std::size_t scan_points = 400;
  double tolerance = 1e-12;
};

struct BoundaryPoint {
  double T;
  double B;
  double residual;
};

struct BoundaryCurve {
  BoundaryKind kind = BoundaryKind::Zero;
  CorrelationKind correlation = CorrelationKind::WorkDeficit;
  SweepAxis axis = SweepAxis::Field;
  std::vector<BoundaryPoint> points;
  std::optional<double> asymptote_B;
};

/// Throws NoBracket when no point exists in the window and PairNotBorn for
/// ZeroPrime when no interior minimum appears anywhere in it.
BoundaryCurve trace_boundary(BoundaryKind kind, CorrelationKind correlation,
                             double J, double Jz, const Sweep& sweep);

struct RasterSpec {
  double T_lo;
  double T_hi;
  double B_lo;
  double B_hi;
  std::size_t T_cells = 64;
  std::size_t B_cells = 64;
};

/// Cell-centred labels plus every boundary that can be traced in the window.
struct PhaseDiagram {
  CorrelationKind correlation = CorrelationKind::WorkDeficit;
  std::vector<double> T_grid;
  std::vector<double> B_grid;
  std::vector<Branch> labels;  // labels[iB * T_grid.size() + iT]
  std::vector<BoundaryCurve> boundaries;

  Branch label(std::size_t iT, std::size_t iB) const {
    return labels[iB * T_grid.size() + iT];
  }
};

PhaseDiagram rasterize(double J, double Jz, const RasterSpec& spec,
                       CorrelationKind kind);

struct LabelConflict {
  std::size_t iT;  // change between iT and iT + 1
  std::size_t iB;
};

/// Label changes along constant-B columns with no overlaid boundary point
/// within one cell.
std::vector<LabelConflict> unexplained_label_changes(const PhaseDiagram& d);

}  // namespace xcorr
