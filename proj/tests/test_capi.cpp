#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "xcorr.h"

namespace {
const xcorr_params kFig2{1.0, -0.9, 1.7, 0.5};
}

TEST_CASE("status strings and names") {
  CHECK(std::string(xcorr_status_string(XCORR_OK)) == "Ok");
  CHECK(std::string(xcorr_status_string(XCORR_NO_BRACKET)) == "NoBracket");
  CHECK(std::string(xcorr_status_string(XCORR_OUT_OF_RANGE)) == "OutOfRange");
  CHECK(std::string(xcorr_kind_name(XCORR_DISCORD)) == "discord");
  CHECK(std::string(xcorr_branch_name(XCORR_BRANCH_PI_HALF)) == "pi-half");
  CHECK(std::string(xcorr_boundary_kind_name(XCORR_BOUNDARY_ZERO_PRIME)) == "zero-prime");
  CHECK(std::string(xcorr_transition_kind_name(XCORR_TRANSITION_COMBINED)) ==
        "combined-first-order");
  CHECK(std::strlen(xcorr_version()) > 0);
}

TEST_CASE("errors set status and thread-local message") {
  xcorr_correlation c{};
  const xcorr_params cold{1.0, -0.9, 1.7, -1.0};
  CHECK(xcorr_optimize(&cold, XCORR_DEFICIT, &c) == XCORR_NON_POSITIVE_TEMPERATURE);
  CHECK(std::strlen(xcorr_last_error()) > 0);
  CHECK(xcorr_optimize(nullptr, XCORR_DEFICIT, &c) == XCORR_INVALID_ARGUMENT);
  CHECK(xcorr_optimize(&kFig2, static_cast<xcorr_kind>(7), &c) == XCORR_INVALID_ARGUMENT);
  const xcorr_params nan{1.0, NAN, 1.7, 0.5};
  CHECK(xcorr_optimize(&nan, XCORR_DEFICIT, &c) == XCORR_INVALID_ARGUMENT);
  const xcorr_params tiny{1.0, -0.9, 1.7, 1e-6};
  CHECK(xcorr_optimize(&tiny, XCORR_DEFICIT, &c) == XCORR_RANGE_UNSUPPORTED);
  CHECK(xcorr_optimize(&kFig2, XCORR_DEFICIT, &c) == XCORR_OK);
  CHECK(std::string(xcorr_last_error()).empty());
}

TEST_CASE("point quantities") {
  xcorr_xstate s{};
  REQUIRE(xcorr_thermal_state(&kFig2, &s) == XCORR_OK);
  CHECK(s.a + 2 * s.b + s.d == doctest::Approx(1.0).epsilon(1e-14));

  xcorr_correlation c{};
  REQUIRE(xcorr_optimize(&kFig2, XCORR_DEFICIT, &c) == XCORR_OK);
  CHECK(c.branch == XCORR_BRANCH_INTERIOR);
  CHECK(c.has_interior);
  CHECK(c.optimal_angle == doctest::Approx(0.40953).epsilon(2e-4));

  xcorr_profile_row row{};
  REQUIRE(xcorr_profile(&kFig2, 0.3, &row) == XCORR_OK);
  CHECK(row.theta == 0.3);
  CHECK(row.deficit > c.value - 1e-12);

  double S = 0, C = 0, rel = 0;
  CHECK(xcorr_thermo_entropy(&kFig2, &S) == XCORR_OK);
  CHECK(xcorr_heat_capacity(&kFig2, &C) == XCORR_OK);
  CHECK(S > 0);
  CHECK(C > 0);
  const xcorr_params warm{1.0, -0.9, 1.7, 0.8};
  CHECK(xcorr_deficit_heat_relation(&warm, &rel) == XCORR_OK);
  CHECK(rel < 1e-5);
  const xcorr_params at_t0{1.0, -0.9, 1.7, 0.5826};
  CHECK(xcorr_deficit_heat_relation(&at_t0, &rel) == XCORR_NEAR_TRANSITION);

  xcorr_curvatures k{};
  REQUIRE(xcorr_endpoint_curvatures(&kFig2, &k) == XCORR_OK);
  CHECK(k.cond_pi_half - k.post_pi_half == doctest::Approx((s.a - s.d) * (s.a - s.d)));

  double B = 0;
  CHECK(xcorr_asymptote(1.0, -0.9, &B) == 1);
  CHECK(B == doctest::Approx(0.43589).epsilon(1e-5));
  CHECK(xcorr_asymptote(1.0, -1.5, &B) == 0);
}

TEST_CASE("boundary handles") {
  xcorr_sweep sw;
  xcorr_sweep_init(&sw);
  sw.from = sw.to = 1.7;
  sw.count = 1;
  sw.solve_lo = 0.1;
  sw.solve_hi = 2.0;
  xcorr_boundary* b = nullptr;
  REQUIRE(xcorr_trace_boundary(XCORR_BOUNDARY_ZERO, XCORR_DEFICIT, 1.0, -0.9, &sw, &b) ==
          XCORR_OK);
  REQUIRE(xcorr_boundary_size(b) == 1);
  CHECK(xcorr_boundary_get_kind(b) == XCORR_BOUNDARY_ZERO);
  xcorr_boundary_point pt{};
  CHECK(xcorr_boundary_get(b, 0, &pt) == XCORR_OK);
  CHECK(pt.T == doctest::Approx(0.58264).epsilon(2e-4));
  CHECK(xcorr_boundary_get(b, 1, &pt) == XCORR_OUT_OF_RANGE);
  xcorr_boundary_free(b);
  xcorr_boundary_free(nullptr);

  sw.solve_lo = 1.0;
  b = reinterpret_cast<xcorr_boundary*>(0x1);
  CHECK(xcorr_trace_boundary(XCORR_BOUNDARY_ZERO, XCORR_DEFICIT, 1.0, -0.9, &sw, &b) ==
        XCORR_NO_BRACKET);
  CHECK(b == nullptr);
}

TEST_CASE("phase diagram handle") {
  const xcorr_raster_spec spec{0.1, 1.0, 0.0, 2.5, 16, 16};
  xcorr_phase_diagram* d = nullptr;
  REQUIRE(xcorr_rasterize(1.0, -0.9, &spec, XCORR_DEFICIT, &d) == XCORR_OK);
  CHECK(xcorr_phase_diagram_T_cells(d) == 16);
  CHECK(xcorr_phase_diagram_B_cells(d) == 16);
  CHECK(xcorr_phase_diagram_conflicts(d) == 0);
  CHECK(xcorr_phase_diagram_boundary_count(d) >= 2);
  CHECK(xcorr_phase_diagram_boundary(d, 99) == nullptr);
  const xcorr_params cell{1.0, -0.9, xcorr_phase_diagram_B(d, 3), xcorr_phase_diagram_T(d, 4)};
  xcorr_correlation c{};
  REQUIRE(xcorr_optimize(&cell, XCORR_DEFICIT, &c) == XCORR_OK);
  CHECK(xcorr_phase_diagram_label(d, 4, 3) == c.branch);
  xcorr_phase_diagram_free(d);
}

TEST_CASE("scan, classify and fits") {
  xcorr_path_scan* s = nullptr;
  REQUIRE(xcorr_scan_path(1.0, -0.9, 1.7, 0.1, 1.5, 400, XCORR_DEFICIT, &s) == XCORR_OK);
  CHECK(xcorr_path_scan_size(s) >= 400);
  xcorr_path_sample first{};
  CHECK(xcorr_path_scan_get(s, 0, &first) == XCORR_OK);
  CHECK(first.T == 1.5);
  CHECK(xcorr_path_scan_get(s, 100000, &first) == XCORR_OUT_OF_RANGE);

  xcorr_transitions* t = nullptr;
  REQUIRE(xcorr_classify(s, &t) == XCORR_OK);
  REQUIRE(xcorr_transitions_size(t) == 2);
  xcorr_transition tr{};
  REQUIRE(xcorr_transitions_get(t, 0, &tr) == XCORR_OK);
  CHECK(tr.kind == XCORR_TRANSITION_CONTINUOUS);
  CHECK(tr.side == XCORR_SIDE_FROM_ZERO);

  xcorr_exponent_fit fit{};
  REQUIRE(xcorr_fit_exponent(s, &tr, 0.02, &fit) == XCORR_OK);
  CHECK(fit.beta == doctest::Approx(0.5).epsilon(0.02));
  CHECK(xcorr_fit_exponent(s, &tr, 0.5, &fit) == XCORR_INVALID_ARGUMENT);

  xcorr_derivative_jumps dj{};
  REQUIRE(xcorr_derivative_jumps_at(s, &tr, &dj) == XCORR_OK);
  CHECK(std::fabs(dj.d1_jump) < 1e-4);
  xcorr_transitions_free(t);
  xcorr_path_scan_free(s);

  REQUIRE(xcorr_scan_path(1.0, -1.5, 0.0, 0.1, 2.0, 200, XCORR_DEFICIT, &s) == XCORR_OK);
  CHECK(xcorr_classify(s, &t) == XCORR_NO_TRANSITION_FOUND);
  xcorr_path_scan_free(s);
  CHECK(xcorr_scan_path(1.0, -0.9, 1.7, 0.1, 1.5, 10, XCORR_DEFICIT, &s) ==
        XCORR_INVALID_ARGUMENT);
}

TEST_CASE("taylor and pair birth") {
  xcorr_taylor_coeffs c{};
  const xcorr_params t0{1.0, -0.9, 1.7, 0.58264372};
  REQUIRE(xcorr_taylor(&t0, XCORR_DEFICIT, XCORR_ANCHOR_ZERO, XCORR_TAYLOR, 0.15, &c) ==
          XCORR_OK);
  CHECK(std::fabs(c.c2) < 1e-6);
  CHECK(c.window == 0.15);
  CHECK_FALSE(c.has_alpha);
  const xcorr_params cold{1.0, -1.5, 1.9, 0.628};
  REQUIRE(xcorr_taylor(&cold, XCORR_DEFICIT, XCORR_ANCHOR_ZERO, XCORR_SEXTIC, 0.8, &c) ==
          XCORR_OK);
  CHECK(c.has_alpha);
  CHECK(c.extrema_count == 2);
  CHECK(xcorr_taylor(&cold, XCORR_DEFICIT, XCORR_ANCHOR_ZERO, XCORR_TAYLOR, -1.0, &c) ==
        XCORR_INVALID_ARGUMENT);

  double T = 0;
  REQUIRE(xcorr_pair_birth(1.0, -1.5, 1.9, XCORR_DEFICIT, 0.62, 0.66, &T) == XCORR_OK);
  CHECK(T == doctest::Approx(0.637).epsilon(2e-3));
  CHECK(xcorr_pair_birth(1.0, -1.5, 1.9, XCORR_DEFICIT, 0.9, 1.0, &T) == XCORR_NO_BRACKET);
}

TEST_CASE("verify report") {
  const size_t n = xcorr_verify_suite_count();
  REQUIRE(n >= 9);
  CHECK(xcorr_verify_suite_name(n) == nullptr);
  xcorr_verify_report* r = nullptr;
  REQUIRE(xcorr_verify_run(xcorr_verify_suite_name(0), 1, &r) == XCORR_OK);
  REQUIRE(xcorr_verify_report_size(r) == 1);
  xcorr_suite_result res{};
  REQUIRE(xcorr_verify_report_get(r, 0, &res) == XCORR_OK);
  CHECK(res.passed);
  CHECK(std::string(res.name) == xcorr_verify_suite_name(0));
  xcorr_verify_report_free(r);
  CHECK(xcorr_verify_run("bogus", 1, &r) == XCORR_INVALID_ARGUMENT);
}
