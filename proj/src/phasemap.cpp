#include "xcorr/phasemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"

namespace xcorr {

double EndpointCurvatures::at(Objective objective,
                              Anchor anchor) const noexcept {
  if (objective == Objective::PostEntropy)
    return anchor == Anchor::Zero ? post_zero : post_pi_half;
  return anchor == Anchor::Zero ? cond_zero : cond_pi_half;
}

namespace {

// y / (e^y - ratio); the ratio = 1 case has the removable limit 1 at y = 0.
double bracket_term(double y, double ratio) {
  if (ratio == 1.0) return y == 0.0 ? 1.0 : y / std::expm1(y);
  return y / (std::exp(y) - ratio);
}

// ln(e^x + e^y)
double log_add_exp(double x, double y) {
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// Second theta-derivative at theta = 0 in state form: with a, b, d, v the
// Gibbs entries, (1/Z)e^{Jz/2T} sinh(B/T) = (a-d)/2, (1/Z)e^{Jz/2T}
// cosh(B/T) = (a+d)/2, (1/Z)e^{-Jz/2T} cosh(J/T) = b and
// (1/Z)e^{-Jz/2T} sinh^2(J/T) = v^2/b * cosh(J/T).
double zero_anchor(const ModelParams& p, const XState& s, double field_term,
                   CoshArgument arg) {
  const double lc = log_cosh(p.J / p.T);
  const double log_ratio =
      arg == CoshArgument::Temperature ? 0.0 : log_cosh(p.J / p.B) - lc;
  const double ratio = std::exp(log_ratio);
  const double y_plus = (p.Jz + p.B) / p.T - lc;
  const double y_minus = (p.Jz - p.B) / p.T - lc;
  const double first =
      0.5 * (s.a - s.d) * field_term + (0.5 * (s.a + s.d) - s.b) * (p.Jz / p.T - lc);
  const double second =
      s.v == 0.0 ? 0.0
                 : 0.5 * (s.v * s.v / s.b) *
                       (bracket_term(y_plus, ratio) + bracket_term(y_minus, ratio));
  return first - second;
}

double log_one_plus_over_one_minus(double r, double one_minus) {
  return std::log1p(r) - std::log(one_minus);
}

double post_pi_half(const XState& s) {
  const double r = pi_half_radius(s);
  const double om = one_minus_pi_half_radius(s);
  const double ad = s.a - s.d;
  const double u = (1.0 - 4.0 * s.b) / r;
  return 8.0 * s.v * s.v *
             (s.a * s.b + s.b * s.d - s.a * s.d - s.b * s.b + s.v * s.v) /
             (r * r * r) * log_one_plus_over_one_minus(r, om) -
         0.5 * ad * ad *
             ((1.0 + u) * (1.0 + u) / (1.0 + r) + (1.0 - u) * (1.0 - u) / om);
}

double cond_pi_half(const XState& s, ConnectingSign sign) {
  const double r = pi_half_radius(s);
  const double om = one_minus_pi_half_radius(s);
  const double ad = s.a - s.d;
  const double w = s.c3() / r;
  const double first = 2.0 * s.v * s.v / r * (1.0 - w * w) *
                       log_one_plus_over_one_minus(r, om);
  const double second = 0.5 * ad * ad *
                        (2.0 - (1.0 + w) * (1.0 + w) / (1.0 + r) -
                         (1.0 - w) * (1.0 - w) / om);
  return sign == ConnectingSign::Plus ? first + second : first - second;
}

// Central second difference with Richardson extrapolation; used only when
// the closed forms at pi/2 become 0/0 (r = 0: a = d and v = 0).
double pi_half_fallback(const XState& s, Objective obj) {
  auto f = [&](double theta) {
    // Even about pi/2: S(pi/2 + t) = S(pi/2 - t).
    const double t = std::fabs(theta - kHalfPi);
    return objective_value(s, obj, MeasurementAngle(kHalfPi - t));
  };
  auto d2 = [&](double h) {
    return (f(kHalfPi + h) - 2.0 * f(kHalfPi) + f(kHalfPi - h)) / (h * h);
  };
  constexpr double h = 1e-3;
  return (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
}

}  // namespace

EndpointCurvatures curvatures(const ModelParams& p, CurvatureForm form) {
  const XState s = thermal_xstate(p);
  EndpointCurvatures out{};
  out.post_zero = zero_anchor(p, s, p.B / p.T, form.cosh_argument);
  const double lc = log_cosh(p.J / p.T);
  const double cond_field =
      p.B / p.T + log_add_exp((p.Jz - p.B) / p.T, lc) -
      log_add_exp((p.Jz + p.B) / p.T, lc);
  out.cond_zero = zero_anchor(p, s, cond_field, form.cosh_argument);

  if (pi_half_radius(s) < 1e-8) {
    out.post_pi_half = pi_half_fallback(s, Objective::PostEntropy);
    out.cond_pi_half = pi_half_fallback(s, Objective::ConditionalEntropy);
  } else {
    out.post_pi_half = post_pi_half(s);
    out.cond_pi_half = cond_pi_half(s, form.conditional_pi_half_sign);
  }
  return out;
}

double curvature(const ModelParams& p, CorrelationKind kind, Anchor anchor) {
  return curvatures(p).at(objective_for(kind), anchor);
}

std::optional<double> asymptote(double J, double Jz) {
  if (J == 0.0 || std::fabs(Jz) > std::fabs(J)) return std::nullopt;
  const double ratio = Jz / J;
  return std::fabs(J) * std::sqrt(1.0 - ratio * ratio);
}

const char* to_string(BoundaryKind kind) noexcept {
  switch (kind) {
    case BoundaryKind::Zero:
      return "zero";
    case BoundaryKind::PiHalf:
      return "pi-half";
    case BoundaryKind::ZeroPrime:
      return "zero-prime";
    case BoundaryKind::BranchSwap:
      return "branch-swap";
  }
  return "unknown";
}

namespace {

std::optional<StationaryPoint> lowest_interior_minimum(const ModelParams& p,
                                                       CorrelationKind kind) {
  std::optional<StationaryPoint> lowest;
  for (const auto& sp : interior_stationary_points(p, kind))
    if (sp.minimum && (!lowest || sp.objective < lowest->objective)) lowest = sp;
  return lowest;
}

// A coexisting minimum must sit at a finite distance from the anchor; near
// a continuous transition the gap also vanishes, but with the minimum
// merging into the endpoint.
constexpr double kMinPrimeSeparation = 1e-3;

}  // namespace

std::optional<double> prime_gap(const ModelParams& p, CorrelationKind kind,
                                Anchor anchor) {
  const auto lowest = lowest_interior_minimum(p, kind);
  if (!lowest) return std::nullopt;
  const XState s = thermal_xstate(p);
  const auto m =
      anchor == Anchor::Zero ? MeasurementAngle::zero() : MeasurementAngle::pi_half();
  return lowest->objective - objective_value(s, objective_for(kind), m);
}

std::optional<double> boundary_function(BoundaryKind kind,
                                        CorrelationKind correlation,
                                        const ModelParams& p) {
  switch (kind) {
    case BoundaryKind::Zero:
      return curvature(p, correlation, Anchor::Zero);
    case BoundaryKind::PiHalf:
      return curvature(p, correlation, Anchor::PiHalf);
    case BoundaryKind::ZeroPrime:
      return prime_gap(p, correlation, Anchor::Zero);
    case BoundaryKind::BranchSwap:
      return correlation == CorrelationKind::WorkDeficit
                 ? deficit_at_zero(p) - deficit_at_pi_half(p)
                 : discord_at_zero(p) - discord_at_pi_half(p);
  }
  return std::nullopt;
}

BoundaryCurve trace_boundary(BoundaryKind kind, CorrelationKind correlation,
                             double J, double Jz, const Sweep& sweep) {
  if (sweep.count == 0 || sweep.scan_points < 2 ||
      !(sweep.solve_hi > sweep.solve_lo) || !(sweep.tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "invalid boundary sweep");
  if (sweep.axis == SweepAxis::Field && !(sweep.solve_lo > 0.0))
    throw Error(ErrorCode::NonPositiveTemperature,
                "temperature window must be positive");

  const bool field_axis = sweep.axis == SweepAxis::Field;
  auto params = [&](double fixed, double solved) {
    return field_axis ? ModelParams{J, Jz, fixed, solved}
                      : ModelParams{J, Jz, solved, fixed};
  };
  const auto fixed_values = linspace(sweep.from, sweep.to, sweep.count);
  // Temperatures spread geometrically, fields linearly.
  const auto scan = field_axis
                        ? geomspace(sweep.solve_lo, sweep.solve_hi, sweep.scan_points)
                        : linspace(sweep.solve_lo, sweep.solve_hi, sweep.scan_points);

  std::vector<std::vector<BoundaryPoint>> per_value(fixed_values.size());
  std::vector<char> any_defined(fixed_values.size(), 0);

  parallel_for(fixed_values.size(), [&](std::size_t i) {
    const double fixed = fixed_values[i];
    auto f = [&](double x) { return boundary_function(kind, correlation, params(fixed, x)); };
    std::vector<std::optional<double>> values(scan.size());
    for (std::size_t k = 0; k < scan.size(); ++k) {
      values[k] = f(scan[k]);
      if (values[k]) any_defined[i] = 1;
    }
    // An undefined value (no interior minimum) counts as positive: the gap
    // closes from below as the minimum appears.
    auto g = [&](double x) { return f(x).value_or(1.0); };
    for (std::size_t k = 0; k + 1 < scan.size(); ++k) {
      if (!values[k] && !values[k + 1]) continue;
      const double g0 = values[k].value_or(1.0);
      const double g1 = values[k + 1].value_or(1.0);
      if (std::signbit(g0) == std::signbit(g1) && g0 != 0.0) continue;
      const double root = bisect(g, scan[k], scan[k + 1], sweep.tolerance);
      const auto residual = f(root);
      // Skip the artificial sign change where the interior minimum is born
      // with a positive gap.
      if (!residual || std::fabs(*residual) > 1e-6) continue;
      const auto q = params(fixed, root);
      if (kind == BoundaryKind::ZeroPrime) {
        const auto m = lowest_interior_minimum(q, correlation);
        if (!m || m->theta < kMinPrimeSeparation) continue;
      }
      per_value[i].push_back({q.T, q.B, std::fabs(*residual)});
    }
  });

  BoundaryCurve curve;
  curve.kind = kind;
  curve.correlation = correlation;
  curve.axis = sweep.axis;
  if (kind == BoundaryKind::Zero || kind == BoundaryKind::PiHalf)
    curve.asymptote_B = asymptote(J, Jz);
  for (auto& pts : per_value)
    curve.points.insert(curve.points.end(), pts.begin(), pts.end());

  if (curve.points.empty()) {
    const bool born = std::any_of(any_defined.begin(), any_defined.end(),
                                  [](char c) { return c != 0; });
    if (kind == BoundaryKind::ZeroPrime && !born)
      throw Error(ErrorCode::PairNotBorn,
                  "no interior minimum anywhere in the sweep window");
    std::ostringstream msg;
    msg << to_string(kind) << " boundary has no point in the sweep window";
    throw Error(ErrorCode::NoBracket, msg.str());
  }
  return curve;
}

PhaseDiagram rasterize(double J, double Jz, const RasterSpec& spec,
                       CorrelationKind kind) {
  if (spec.T_cells < 16 || spec.B_cells < 16)
    throw Error(ErrorCode::InvalidArgument,
                "phase diagram needs at least 16 cells per axis");
  if (!(spec.T_hi > spec.T_lo) || !(spec.B_hi > spec.B_lo))
    throw Error(ErrorCode::InvalidArgument, "empty phase-diagram window");
  if (!(spec.T_lo > 0.0))
    throw Error(ErrorCode::NonPositiveTemperature,
                "temperature window must be positive");

  PhaseDiagram d;
  d.correlation = kind;
  const double dT = (spec.T_hi - spec.T_lo) / static_cast<double>(spec.T_cells);
  const double dB = (spec.B_hi - spec.B_lo) / static_cast<double>(spec.B_cells);
  for (std::size_t i = 0; i < spec.T_cells; ++i)
    d.T_grid.push_back(spec.T_lo + (static_cast<double>(i) + 0.5) * dT);
  for (std::size_t j = 0; j < spec.B_cells; ++j)
    d.B_grid.push_back(spec.B_lo + (static_cast<double>(j) + 0.5) * dB);

  d.labels.resize(spec.T_cells * spec.B_cells);
  parallel_for(d.labels.size(), [&](std::size_t idx) {
    const std::size_t iB = idx / spec.T_cells;
    const std::size_t iT = idx % spec.T_cells;
    d.labels[idx] =
        optimize({J, Jz, d.B_grid[iB], d.T_grid[iT]}, kind).branch;
  });

  Sweep sweep;
  sweep.axis = SweepAxis::Field;
  sweep.from = d.B_grid.front();
  sweep.to = d.B_grid.back();
  sweep.count = spec.B_cells;
  sweep.solve_lo = spec.T_lo;
  sweep.solve_hi = spec.T_hi;
  sweep.scan_points = std::max<std::size_t>(4 * spec.T_cells, 200);
  for (auto bk : {BoundaryKind::Zero, BoundaryKind::PiHalf,
                  BoundaryKind::ZeroPrime, BoundaryKind::BranchSwap}) {
    try {
      d.boundaries.push_back(trace_boundary(bk, kind, J, Jz, sweep));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoBracket && e.code() != ErrorCode::PairNotBorn)
        throw;
    }
  }
  return d;
}

std::vector<LabelConflict> unexplained_label_changes(const PhaseDiagram& d) {
  std::vector<LabelConflict> out;
  const std::size_t nT = d.T_grid.size();
  if (nT < 2 || d.B_grid.empty()) return out;
  const double dT = d.T_grid[1] - d.T_grid[0];
  for (std::size_t iB = 0; iB < d.B_grid.size(); ++iB) {
    const double B = d.B_grid[iB];
    for (std::size_t iT = 0; iT + 1 < nT; ++iT) {
      if (d.label(iT, iB) == d.label(iT + 1, iB)) continue;
      const double lo = d.T_grid[iT] - dT;
      const double hi = d.T_grid[iT + 1] + dT;
      bool explained = false;
      for (const auto& curve : d.boundaries)
        for (const auto& pt : curve.points)
          if (std::fabs(pt.B - B) <= 1e-9 * std::max(1.0, std::fabs(B)) &&
              pt.T >= lo && pt.T <= hi)
            explained = true;
      if (!explained) out.push_back({iT, iB});
    }
  }
  return out;
}

}  // namespace xcorr
