#include "xcorr.h"

#include <algorithm>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "xcorr/error.hpp"
#include "xcorr/transitions.hpp"
#include "xcorr/verify.hpp"

struct xcorr_path_scan {
  xcorr::PathScan scan;
};

struct xcorr_transitions {
  std::vector<xcorr::TransitionReport> reports;
};

struct xcorr_boundary {
  xcorr::BoundaryCurve curve;
};

struct xcorr_phase_diagram {
  xcorr::PhaseDiagram diagram;
  std::vector<xcorr_boundary> boundaries;
  std::size_t conflicts;
};

struct xcorr_verify_report {
  std::vector<xcorr::verify::SuiteResult> results;
};

namespace {

thread_local std::string last_error;

template <class F>
xcorr_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return XCORR_OK;
  } catch (const xcorr::Error& e) {
    last_error = e.what();
    return static_cast<xcorr_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return XCORR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return XCORR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return XCORR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw xcorr::Error(xcorr::ErrorCode::InvalidArgument, what);
}

xcorr::ModelParams to_cpp(const xcorr_params& p) { return {p.J, p.Jz, p.B, p.T}; }

xcorr::CorrelationKind to_cpp(xcorr_kind kind) {
  require(kind == XCORR_DEFICIT || kind == XCORR_DISCORD, "unknown correlation kind");
  return kind == XCORR_DEFICIT ? xcorr::CorrelationKind::WorkDeficit
                               : xcorr::CorrelationKind::Discord;
}

xcorr_branch to_c(xcorr::Branch b) {
  switch (b) {
    case xcorr::Branch::Zero:
      return XCORR_BRANCH_ZERO;
    case xcorr::Branch::PiHalf:
      return XCORR_BRANCH_PI_HALF;
    case xcorr::Branch::Interior:
      return XCORR_BRANCH_INTERIOR;
  }
  return XCORR_BRANCH_ZERO;
}

xcorr::BoundaryKind to_cpp(xcorr_boundary_kind kind) {
  switch (kind) {
    case XCORR_BOUNDARY_ZERO:
      return xcorr::BoundaryKind::Zero;
    case XCORR_BOUNDARY_PI_HALF:
      return xcorr::BoundaryKind::PiHalf;
    case XCORR_BOUNDARY_ZERO_PRIME:
      return xcorr::BoundaryKind::ZeroPrime;
    case XCORR_BOUNDARY_BRANCH_SWAP:
      return xcorr::BoundaryKind::BranchSwap;
  }
  throw xcorr::Error(xcorr::ErrorCode::InvalidArgument, "unknown boundary kind");
}

xcorr_boundary_kind to_c(xcorr::BoundaryKind kind) {
  switch (kind) {
    case xcorr::BoundaryKind::Zero:
      return XCORR_BOUNDARY_ZERO;
    case xcorr::BoundaryKind::PiHalf:
      return XCORR_BOUNDARY_PI_HALF;
    case xcorr::BoundaryKind::ZeroPrime:
      return XCORR_BOUNDARY_ZERO_PRIME;
    case xcorr::BoundaryKind::BranchSwap:
      return XCORR_BOUNDARY_BRANCH_SWAP;
  }
  return XCORR_BOUNDARY_ZERO;
}

xcorr_transition to_c(const xcorr::TransitionReport& r) {
  xcorr_transition t{};
  switch (r.kind) {
    case xcorr::TransitionKind::BranchSwapJump:
      t.kind = XCORR_TRANSITION_BRANCH_SWAP;
      break;
    case xcorr::TransitionKind::ContinuousSecondOrder:
      t.kind = XCORR_TRANSITION_CONTINUOUS;
      break;
    case xcorr::TransitionKind::CombinedFirstOrder:
      t.kind = XCORR_TRANSITION_COMBINED;
      break;
  }
  t.T_c = r.T_c;
  t.angle_jump = r.angle_jump;
  t.side = r.side == xcorr::TransitionSide::FromZero ? XCORR_SIDE_FROM_ZERO
                                                     : XCORR_SIDE_FROM_PI_HALF;
  t.above = to_c(r.above);
  t.below = to_c(r.below);
  return t;
}

xcorr::TransitionReport to_cpp(const xcorr_transition& t) {
  xcorr::TransitionReport r{};
  switch (t.kind) {
    case XCORR_TRANSITION_BRANCH_SWAP:
      r.kind = xcorr::TransitionKind::BranchSwapJump;
      break;
    case XCORR_TRANSITION_CONTINUOUS:
      r.kind = xcorr::TransitionKind::ContinuousSecondOrder;
      break;
    case XCORR_TRANSITION_COMBINED:
      r.kind = xcorr::TransitionKind::CombinedFirstOrder;
      break;
    default:
      throw xcorr::Error(xcorr::ErrorCode::InvalidArgument, "unknown transition kind");
  }
  r.T_c = t.T_c;
  r.angle_jump = t.angle_jump;
  r.side = t.side == XCORR_SIDE_FROM_PI_HALF ? xcorr::TransitionSide::FromPiHalf
                                             : xcorr::TransitionSide::FromZero;
  return r;
}

}  // namespace

extern "C" {

const char* xcorr_version(void) { return "1.0.0"; }

const char* xcorr_status_string(xcorr_status status) {
  switch (status) {
    case XCORR_OK:
      return "Ok";
    case XCORR_OUT_OF_RANGE:
      return "OutOfRange";
    case XCORR_OUT_OF_MEMORY:
      return "OutOfMemory";
    case XCORR_INTERNAL:
      return "Internal";
    default:
      break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(xcorr::ErrorCode::IllConditionedFit))
    return xcorr::to_string(static_cast<xcorr::ErrorCode>(code));
  return "Unknown";
}

const char* xcorr_last_error(void) { return last_error.c_str(); }

const char* xcorr_kind_name(xcorr_kind kind) {
  return kind == XCORR_DISCORD ? "discord" : "deficit";
}

const char* xcorr_branch_name(xcorr_branch branch) {
  switch (branch) {
    case XCORR_BRANCH_ZERO:
      return xcorr::to_string(xcorr::Branch::Zero);
    case XCORR_BRANCH_PI_HALF:
      return xcorr::to_string(xcorr::Branch::PiHalf);
    case XCORR_BRANCH_INTERIOR:
      return xcorr::to_string(xcorr::Branch::Interior);
  }
  return "unknown";
}

const char* xcorr_boundary_kind_name(xcorr_boundary_kind kind) {
  try {
    return xcorr::to_string(to_cpp(kind));
  } catch (...) {
    return "unknown";
  }
}

const char* xcorr_transition_kind_name(xcorr_transition_kind kind) {
  switch (kind) {
    case XCORR_TRANSITION_BRANCH_SWAP:
      return xcorr::to_string(xcorr::TransitionKind::BranchSwapJump);
    case XCORR_TRANSITION_CONTINUOUS:
      return xcorr::to_string(xcorr::TransitionKind::ContinuousSecondOrder);
    case XCORR_TRANSITION_COMBINED:
      return xcorr::to_string(xcorr::TransitionKind::CombinedFirstOrder);
  }
  return "unknown";
}

const char* xcorr_side_name(xcorr_side side) {
  return xcorr::to_string(side == XCORR_SIDE_FROM_PI_HALF ? xcorr::TransitionSide::FromPiHalf
                                                          : xcorr::TransitionSide::FromZero);
}

xcorr_status xcorr_thermal_state(const xcorr_params* p, xcorr_xstate* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const auto s = xcorr::thermal_xstate(to_cpp(*p));
    *out = {s.a, s.b, s.d, s.v};
  });
}

xcorr_status xcorr_thermo_entropy(const xcorr_params* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = xcorr::thermo_entropy(to_cpp(*p));
  });
}

xcorr_status xcorr_heat_capacity(const xcorr_params* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = xcorr::heat_capacity(to_cpp(*p));
  });
}

xcorr_status xcorr_optimize(const xcorr_params* p, xcorr_kind kind, xcorr_correlation* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const auto r = xcorr::optimize(to_cpp(*p), to_cpp(kind));
    xcorr_correlation c{};
    c.value = r.value;
    c.optimal_angle = r.optimal_angle;
    c.branch = to_c(r.branch);
    c.at_zero = r.branch_values.at_zero;
    c.at_pi_half = r.branch_values.at_pi_half;
    c.has_interior = r.branch_values.interior.has_value();
    c.interior = r.branch_values.interior.value_or(0.0);
    c.interior_angle = r.branch_values.interior_angle.value_or(0.0);
    c.degenerate = r.degenerate;
    *out = c;
  });
}

xcorr_status xcorr_profile(const xcorr_params* p, double theta, xcorr_profile_row* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const auto r = xcorr::profile_row(to_cpp(*p), theta);
    *out = {r.theta, r.post_entropy, r.conditional_entropy, r.deficit, r.discord};
  });
}

xcorr_status xcorr_deficit_heat_relation(const xcorr_params* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = xcorr::deficit_heat_relation(to_cpp(*p));
  });
}

xcorr_status xcorr_endpoint_curvatures(const xcorr_params* p, xcorr_curvatures* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const auto c = xcorr::curvatures(to_cpp(*p));
    *out = {c.post_zero, c.post_pi_half, c.cond_zero, c.cond_pi_half};
  });
}

int xcorr_asymptote(double J, double Jz, double* B_out) {
  const auto b = xcorr::asymptote(J, Jz);
  if (b && B_out) *B_out = *b;
  return b.has_value();
}

void xcorr_sweep_init(xcorr_sweep* sweep) {
  if (!sweep) return;
  const xcorr::Sweep d;
  *sweep = {XCORR_SWEEP_FIELD, d.from, d.to, d.count, d.solve_lo, d.solve_hi,
            d.scan_points, d.tolerance};
}

xcorr_status xcorr_trace_boundary(xcorr_boundary_kind kind, xcorr_kind correlation, double J,
                                  double Jz, const xcorr_sweep* sweep, xcorr_boundary** out) {
  return guarded([&] {
    require(sweep && out, "null argument");
    *out = nullptr;
    xcorr::Sweep s;
    s.axis = sweep->axis == XCORR_SWEEP_TEMPERATURE ? xcorr::SweepAxis::Temperature
                                                    : xcorr::SweepAxis::Field;
    s.from = sweep->from;
    s.to = sweep->to;
    s.count = sweep->count;
    s.solve_lo = sweep->solve_lo;
    s.solve_hi = sweep->solve_hi;
    s.scan_points = sweep->scan_points;
    s.tolerance = sweep->tolerance;
    *out = new xcorr_boundary{
        xcorr::trace_boundary(to_cpp(kind), to_cpp(correlation), J, Jz, s)};
  });
}

xcorr_boundary_kind xcorr_boundary_get_kind(const xcorr_boundary* b) {
  return b ? to_c(b->curve.kind) : XCORR_BOUNDARY_ZERO;
}

size_t xcorr_boundary_size(const xcorr_boundary* b) { return b ? b->curve.points.size() : 0; }

xcorr_status xcorr_boundary_get(const xcorr_boundary* b, size_t i, xcorr_boundary_point* out) {
  if (!b || !out || i >= b->curve.points.size()) {
    last_error = "boundary index out of range";
    return XCORR_OUT_OF_RANGE;
  }
  const auto& pt = b->curve.points[i];
  *out = {pt.T, pt.B, pt.residual};
  return XCORR_OK;
}

int xcorr_boundary_asymptote(const xcorr_boundary* b, double* B_out) {
  if (!b || !b->curve.asymptote_B) return 0;
  if (B_out) *B_out = *b->curve.asymptote_B;
  return 1;
}

void xcorr_boundary_free(xcorr_boundary* b) { delete b; }

xcorr_status xcorr_rasterize(double J, double Jz, const xcorr_raster_spec* spec,
                             xcorr_kind kind, xcorr_phase_diagram** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = nullptr;
    const xcorr::RasterSpec s{spec->T_lo, spec->T_hi, spec->B_lo,
                              spec->B_hi, spec->T_cells, spec->B_cells};
    auto d = std::make_unique<xcorr_phase_diagram>();
    d->diagram = xcorr::rasterize(J, Jz, s, to_cpp(kind));
    for (const auto& c : d->diagram.boundaries) d->boundaries.push_back({c});
    d->conflicts = xcorr::unexplained_label_changes(d->diagram).size();
    *out = d.release();
  });
}

size_t xcorr_phase_diagram_T_cells(const xcorr_phase_diagram* d) {
  return d ? d->diagram.T_grid.size() : 0;
}

size_t xcorr_phase_diagram_B_cells(const xcorr_phase_diagram* d) {
  return d ? d->diagram.B_grid.size() : 0;
}

double xcorr_phase_diagram_T(const xcorr_phase_diagram* d, size_t iT) {
  return d && iT < d->diagram.T_grid.size() ? d->diagram.T_grid[iT] : 0.0;
}

double xcorr_phase_diagram_B(const xcorr_phase_diagram* d, size_t iB) {
  return d && iB < d->diagram.B_grid.size() ? d->diagram.B_grid[iB] : 0.0;
}

xcorr_branch xcorr_phase_diagram_label(const xcorr_phase_diagram* d, size_t iT, size_t iB) {
  if (!d || iT >= d->diagram.T_grid.size() || iB >= d->diagram.B_grid.size())
    return XCORR_BRANCH_ZERO;
  return to_c(d->diagram.label(iT, iB));
}

size_t xcorr_phase_diagram_boundary_count(const xcorr_phase_diagram* d) {
  return d ? d->boundaries.size() : 0;
}

const xcorr_boundary* xcorr_phase_diagram_boundary(const xcorr_phase_diagram* d, size_t k) {
  return d && k < d->boundaries.size() ? &d->boundaries[k] : nullptr;
}

size_t xcorr_phase_diagram_conflicts(const xcorr_phase_diagram* d) {
  return d ? d->conflicts : 0;
}

void xcorr_phase_diagram_free(xcorr_phase_diagram* d) { delete d; }

xcorr_status xcorr_scan_path(double J, double Jz, double B, double T_lo, double T_hi,
                             size_t n, xcorr_kind kind, xcorr_path_scan** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    *out = new xcorr_path_scan{xcorr::scan_path(J, Jz, B, T_lo, T_hi, n, to_cpp(kind))};
  });
}

size_t xcorr_path_scan_size(const xcorr_path_scan* s) { return s ? s->scan.samples.size() : 0; }

xcorr_status xcorr_path_scan_get(const xcorr_path_scan* s, size_t i, xcorr_path_sample* out) {
  if (!s || !out || i >= s->scan.samples.size()) {
    last_error = "scan index out of range";
    return XCORR_OUT_OF_RANGE;
  }
  const auto& x = s->scan.samples[i];
  *out = {x.T, x.angle, x.value, to_c(x.branch)};
  return XCORR_OK;
}

void xcorr_path_scan_free(xcorr_path_scan* s) { delete s; }

xcorr_status xcorr_classify(const xcorr_path_scan* s, xcorr_transitions** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = nullptr;
    *out = new xcorr_transitions{xcorr::classify(s->scan)};
  });
}

size_t xcorr_transitions_size(const xcorr_transitions* t) { return t ? t->reports.size() : 0; }

xcorr_status xcorr_transitions_get(const xcorr_transitions* t, size_t i,
                                   xcorr_transition* out) {
  if (!t || !out || i >= t->reports.size()) {
    last_error = "transition index out of range";
    return XCORR_OUT_OF_RANGE;
  }
  *out = to_c(t->reports[i]);
  return XCORR_OK;
}

void xcorr_transitions_free(xcorr_transitions* t) { delete t; }

xcorr_status xcorr_fit_exponent(const xcorr_path_scan* s, const xcorr_transition* t,
                                double window_frac, xcorr_exponent_fit* out) {
  return guarded([&] {
    require(s && t && out, "null argument");
    const auto f = xcorr::fit_exponent(s->scan, to_cpp(*t), window_frac);
    *out = {f.beta, f.amplitude, f.r_squared, f.window_frac, f.points};
  });
}

xcorr_status xcorr_derivative_jumps_at(const xcorr_path_scan* s, const xcorr_transition* t,
                                       xcorr_derivative_jumps* out) {
  return guarded([&] {
    require(s && t && out, "null argument");
    const auto j = xcorr::derivative_discontinuities(s->scan, to_cpp(*t));
    *out = {j.d1_jump, j.d2_jump, j.d1_noise, j.d2_noise};
  });
}

xcorr_status xcorr_taylor(const xcorr_params* p, xcorr_kind kind, xcorr_anchor anchor,
                          xcorr_taylor_order order, double window, xcorr_taylor_coeffs* out) {
  return guarded([&] {
    require(p && out, "null argument");
    xcorr::TaylorOptions o;
    o.order = order == XCORR_SEXTIC ? xcorr::TaylorOrder::Sextic : xcorr::TaylorOrder::Taylor;
    o.window = window;
    const auto c = xcorr::taylor_coeffs(
        to_cpp(*p), to_cpp(kind),
        anchor == XCORR_ANCHOR_PI_HALF ? xcorr::Anchor::PiHalf : xcorr::Anchor::Zero, o);
    xcorr_taylor_coeffs r{};
    r.window = c.window;
    r.c0 = c.c0;
    r.c2 = c.c2;
    r.c4 = c.c4;
    r.c6 = c.c6;
    r.max_residual = c.max_residual;
    r.closed_form_c2 = c.closed_form_c2;
    r.has_alpha = c.alpha1.has_value();
    r.alpha1 = c.alpha1.value_or(0.0);
    r.alpha2 = c.alpha2.value_or(0.0);
    r.extrema_count = std::min<std::size_t>(c.extrema.size(), 2);
    for (std::size_t k = 0; k < r.extrema_count; ++k) r.extrema[k] = c.extrema[k];
    *out = r;
  });
}

xcorr_status xcorr_pair_birth(double J, double Jz, double B, xcorr_kind kind, double T_lo,
                              double T_hi, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = xcorr::pair_birth_temperature(J, Jz, B, to_cpp(kind), T_lo, T_hi);
  });
}

size_t xcorr_verify_suite_count(void) { return xcorr::verify::suite_names().size(); }

const char* xcorr_verify_suite_name(size_t i) {
  const auto& names = xcorr::verify::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

xcorr_status xcorr_verify_run(const char* suite, uint64_t seed, xcorr_verify_report** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    auto r = std::make_unique<xcorr_verify_report>();
    if (suite)
      r->results.push_back(xcorr::verify::run_suite(suite, seed));
    else
      r->results = xcorr::verify::run_all(seed);
    *out = r.release();
  });
}

size_t xcorr_verify_report_size(const xcorr_verify_report* r) {
  return r ? r->results.size() : 0;
}

xcorr_status xcorr_verify_report_get(const xcorr_verify_report* r, size_t i,
                                     xcorr_suite_result* out) {
  if (!r || !out || i >= r->results.size()) {
    last_error = "report index out of range";
    return XCORR_OUT_OF_RANGE;
  }
  const auto& s = r->results[i];
  *out = {s.name.c_str(), s.passed, s.max_error, s.tolerance, s.detail.c_str()};
  return XCORR_OK;
}

void xcorr_verify_report_free(xcorr_verify_report* r) { delete r; }

}  // extern "C"
