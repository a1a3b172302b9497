/* C interface to the xcorr library: work deficit and quantum discord of the
 * two-qubit XXZ dimer in a field at thermal equilibrium.
 *
 * Every fallible call returns an xcorr_status; on failure a message is
 * available from xcorr_last_error() on the same thread. Handles returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function (NULL is accepted). Entropies are in nats. */
#ifndef XCORR_H
#define XCORR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define XCORR_API __declspec(dllexport)
#else
#define XCORR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xcorr_status {
  XCORR_OK = 0,
  XCORR_INVALID_ARGUMENT = 1,
  XCORR_NON_POSITIVE_TEMPERATURE = 2,
  XCORR_RANGE_UNSUPPORTED = 3,
  XCORR_INVALID_STATE = 4,
  XCORR_NOT_HERMITIAN = 5,
  XCORR_DEGENERATE_OUTCOME = 6,
  XCORR_NEAR_TRANSITION = 7,
  XCORR_NO_BRACKET = 8,
  XCORR_PAIR_NOT_BORN = 9,
  XCORR_NO_TRANSITION_FOUND = 10,
  XCORR_INSUFFICIENT_POINTS = 11,
  XCORR_ILL_CONDITIONED_FIT = 12,
  XCORR_OUT_OF_RANGE = 13,
  XCORR_OUT_OF_MEMORY = 14,
  XCORR_INTERNAL = 15
} xcorr_status;

typedef enum xcorr_kind { XCORR_DEFICIT = 0, XCORR_DISCORD = 1 } xcorr_kind;

typedef enum xcorr_branch {
  XCORR_BRANCH_ZERO = 0,
  XCORR_BRANCH_PI_HALF = 1,
  XCORR_BRANCH_INTERIOR = 2
} xcorr_branch;

typedef enum xcorr_anchor { XCORR_ANCHOR_ZERO = 0, XCORR_ANCHOR_PI_HALF = 1 } xcorr_anchor;

typedef enum xcorr_boundary_kind {
  XCORR_BOUNDARY_ZERO = 0,
  XCORR_BOUNDARY_PI_HALF = 1,
  XCORR_BOUNDARY_ZERO_PRIME = 2,
  XCORR_BOUNDARY_BRANCH_SWAP = 3
} xcorr_boundary_kind;

typedef enum xcorr_sweep_axis { XCORR_SWEEP_FIELD = 0, XCORR_SWEEP_TEMPERATURE = 1 } xcorr_sweep_axis;

typedef enum xcorr_transition_kind {
  XCORR_TRANSITION_BRANCH_SWAP = 0,
  XCORR_TRANSITION_CONTINUOUS = 1,
  XCORR_TRANSITION_COMBINED = 2
} xcorr_transition_kind;

typedef enum xcorr_side { XCORR_SIDE_FROM_ZERO = 0, XCORR_SIDE_FROM_PI_HALF = 1 } xcorr_side;

typedef enum xcorr_taylor_order { XCORR_TAYLOR = 0, XCORR_SEXTIC = 1 } xcorr_taylor_order;

XCORR_API const char* xcorr_version(void);
XCORR_API const char* xcorr_status_string(xcorr_status status);
/* Message of the last failed call on this thread ("" if none). */
XCORR_API const char* xcorr_last_error(void);

XCORR_API const char* xcorr_kind_name(xcorr_kind kind);
XCORR_API const char* xcorr_branch_name(xcorr_branch branch);
XCORR_API const char* xcorr_boundary_kind_name(xcorr_boundary_kind kind);
XCORR_API const char* xcorr_transition_kind_name(xcorr_transition_kind kind);
XCORR_API const char* xcorr_side_name(xcorr_side side);

typedef struct xcorr_params {
  double J;
  double Jz;
  double B;
  double T;
} xcorr_params;

typedef struct xcorr_xstate {
  double a;
  double b;
  double d;
  double v;
} xcorr_xstate;

XCORR_API xcorr_status xcorr_thermal_state(const xcorr_params* p, xcorr_xstate* out);
XCORR_API xcorr_status xcorr_thermo_entropy(const xcorr_params* p, double* out);
XCORR_API xcorr_status xcorr_heat_capacity(const xcorr_params* p, double* out);

/* ---- correlations ------------------------------------------------------ */

typedef struct xcorr_correlation {
  double value;
  double optimal_angle;
  xcorr_branch branch;
  double at_zero;
  double at_pi_half;
  int has_interior;
  double interior;
  double interior_angle;
  int degenerate;
} xcorr_correlation;

XCORR_API xcorr_status xcorr_optimize(const xcorr_params* p, xcorr_kind kind,
                                      xcorr_correlation* out);

typedef struct xcorr_profile_row {
  double theta;
  double post_entropy;
  double conditional_entropy;
  double deficit;
  double discord;
} xcorr_profile_row;

XCORR_API xcorr_status xcorr_profile(const xcorr_params* p, double theta,
                                     xcorr_profile_row* out);

/* |T dDelta/dT - (C~ - C)|; XCORR_NEAR_TRANSITION close to a branch change. */
XCORR_API xcorr_status xcorr_deficit_heat_relation(const xcorr_params* p, double* out);

/* ---- curvatures and boundaries ----------------------------------------- */

typedef struct xcorr_curvatures {
  double post_zero;
  double post_pi_half;
  double cond_zero;
  double cond_pi_half;
} xcorr_curvatures;

XCORR_API xcorr_status xcorr_endpoint_curvatures(const xcorr_params* p, xcorr_curvatures* out);

/* Returns 1 and writes B when the high-temperature asymptote exists. */
XCORR_API int xcorr_asymptote(double J, double Jz, double* B_out);

typedef struct xcorr_sweep {
  xcorr_sweep_axis axis;
  double from;
  double to;
  size_t count;
  double solve_lo;
  double solve_hi;
  size_t scan_points;
  double tolerance;
} xcorr_sweep;

XCORR_API void xcorr_sweep_init(xcorr_sweep* sweep);

typedef struct xcorr_boundary_point {
  double T;
  double B;
  double residual;
} xcorr_boundary_point;

typedef struct xcorr_boundary xcorr_boundary;

XCORR_API xcorr_status xcorr_trace_boundary(xcorr_boundary_kind kind, xcorr_kind correlation,
                                            double J, double Jz, const xcorr_sweep* sweep,
                                            xcorr_boundary** out);
XCORR_API xcorr_boundary_kind xcorr_boundary_get_kind(const xcorr_boundary* b);
XCORR_API size_t xcorr_boundary_size(const xcorr_boundary* b);
XCORR_API xcorr_status xcorr_boundary_get(const xcorr_boundary* b, size_t i,
                                          xcorr_boundary_point* out);
XCORR_API int xcorr_boundary_asymptote(const xcorr_boundary* b, double* B_out);
XCORR_API void xcorr_boundary_free(xcorr_boundary* b);

typedef struct xcorr_raster_spec {
  double T_lo;
  double T_hi;
  double B_lo;
  double B_hi;
  size_t T_cells;
  size_t B_cells;
} xcorr_raster_spec;

typedef struct xcorr_phase_diagram xcorr_phase_diagram;

XCORR_API xcorr_status xcorr_rasterize(double J, double Jz, const xcorr_raster_spec* spec,
                                       xcorr_kind kind, xcorr_phase_diagram** out);
XCORR_API size_t xcorr_phase_diagram_T_cells(const xcorr_phase_diagram* d);
XCORR_API size_t xcorr_phase_diagram_B_cells(const xcorr_phase_diagram* d);
XCORR_API double xcorr_phase_diagram_T(const xcorr_phase_diagram* d, size_t iT);
XCORR_API double xcorr_phase_diagram_B(const xcorr_phase_diagram* d, size_t iB);
XCORR_API xcorr_branch xcorr_phase_diagram_label(const xcorr_phase_diagram* d, size_t iT,
                                                 size_t iB);
XCORR_API size_t xcorr_phase_diagram_boundary_count(const xcorr_phase_diagram* d);
/* Borrowed pointer, valid until the diagram is freed. */
XCORR_API const xcorr_boundary* xcorr_phase_diagram_boundary(const xcorr_phase_diagram* d,
                                                             size_t k);
/* Label changes along constant-B columns not explained by a boundary. */
XCORR_API size_t xcorr_phase_diagram_conflicts(const xcorr_phase_diagram* d);
XCORR_API void xcorr_phase_diagram_free(xcorr_phase_diagram* d);

/* ---- temperature scans and transitions --------------------------------- */

typedef struct xcorr_path_sample {
  double T;
  double angle;
  double value;
  xcorr_branch branch;
} xcorr_path_sample;

typedef struct xcorr_path_scan xcorr_path_scan;

XCORR_API xcorr_status xcorr_scan_path(double J, double Jz, double B, double T_lo,
                                       double T_hi, size_t n, xcorr_kind kind,
                                       xcorr_path_scan** out);
XCORR_API size_t xcorr_path_scan_size(const xcorr_path_scan* s);
XCORR_API xcorr_status xcorr_path_scan_get(const xcorr_path_scan* s, size_t i,
                                           xcorr_path_sample* out);
XCORR_API void xcorr_path_scan_free(xcorr_path_scan* s);

typedef struct xcorr_transition {
  xcorr_transition_kind kind;
  double T_c;
  double angle_jump;
  xcorr_side side;
  xcorr_branch above;
  xcorr_branch below;
} xcorr_transition;

typedef struct xcorr_transitions xcorr_transitions;

/* XCORR_NO_TRANSITION_FOUND when the scan never changes branch. */
XCORR_API xcorr_status xcorr_classify(const xcorr_path_scan* s, xcorr_transitions** out);
XCORR_API size_t xcorr_transitions_size(const xcorr_transitions* t);
XCORR_API xcorr_status xcorr_transitions_get(const xcorr_transitions* t, size_t i,
                                             xcorr_transition* out);
XCORR_API void xcorr_transitions_free(xcorr_transitions* t);

typedef struct xcorr_exponent_fit {
  double beta;
  double amplitude;
  double r_squared;
  double window_frac;
  size_t points;
} xcorr_exponent_fit;

XCORR_API xcorr_status xcorr_fit_exponent(const xcorr_path_scan* s, const xcorr_transition* t,
                                          double window_frac, xcorr_exponent_fit* out);

typedef struct xcorr_derivative_jumps {
  double d1_jump;
  double d2_jump;
  double d1_noise;
  double d2_noise;
} xcorr_derivative_jumps;

XCORR_API xcorr_status xcorr_derivative_jumps_at(const xcorr_path_scan* s,
                                                 const xcorr_transition* t,
                                                 xcorr_derivative_jumps* out);

typedef struct xcorr_taylor_coeffs {
  double window; /* window actually fitted */
  double c0;
  double c2;
  double c4;
  double c6;
  double max_residual;
  double closed_form_c2;
  int has_alpha;
  double alpha1;
  double alpha2;
  size_t extrema_count;
  double extrema[2];
} xcorr_taylor_coeffs;

XCORR_API xcorr_status xcorr_taylor(const xcorr_params* p, xcorr_kind kind, xcorr_anchor anchor,
                                    xcorr_taylor_order order, double window,
                                    xcorr_taylor_coeffs* out);

XCORR_API xcorr_status xcorr_pair_birth(double J, double Jz, double B, xcorr_kind kind,
                                        double T_lo, double T_hi, double* out);

/* ---- verification suites ----------------------------------------------- */

XCORR_API size_t xcorr_verify_suite_count(void);
XCORR_API const char* xcorr_verify_suite_name(size_t i);

typedef struct xcorr_suite_result {
  const char* name;   /* valid until the report is freed */
  int passed;
  double max_error;
  double tolerance;
  const char* detail;
} xcorr_suite_result;

typedef struct xcorr_verify_report xcorr_verify_report;

/* suite == NULL runs every suite. */
XCORR_API xcorr_status xcorr_verify_run(const char* suite, uint64_t seed,
                                        xcorr_verify_report** out);
XCORR_API size_t xcorr_verify_report_size(const xcorr_verify_report* r);
XCORR_API xcorr_status xcorr_verify_report_get(const xcorr_verify_report* r, size_t i,
                                               xcorr_suite_result* out);
XCORR_API void xcorr_verify_report_free(xcorr_verify_report* r);

#ifdef __cplusplus
}
#endif

#endif /* XCORR_H */
