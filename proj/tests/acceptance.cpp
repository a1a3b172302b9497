// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "xcorr/correlations.hpp"
#include "xcorr/entropies.hpp"
#include "xcorr/numeric.hpp"
#include "xcorr/phasemap.hpp"
#include "xcorr/transitions.hpp"
#include "xcorr/verify.hpp"

using namespace xcorr;

namespace {

constexpr auto kDeficit = CorrelationKind::WorkDeficit;
constexpr auto kDiscord = CorrelationKind::Discord;

bool near(double x, double target, double tol) { return std::fabs(x - target) <= tol; }

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

double boundary_T(BoundaryKind kind, CorrelationKind corr, double Jz, double B) {
  Sweep s;
  s.from = s.to = B;
  s.count = 1;
  s.solve_lo = 0.1;
  s.solve_hi = 2.0;
  return trace_boundary(kind, corr, 1.0, Jz, s).points.at(0).T;
}

Outcome criterion1() {
  const double t0 = boundary_T(BoundaryKind::Zero, kDeficit, -0.9, 1.7);
  const double tp = boundary_T(BoundaryKind::PiHalf, kDeficit, -0.9, 1.7);
  const double width = (t0 - tp) / (0.5 * (t0 + tp));
  return {near(t0, 0.58264, 5e-4) && near(tp, 0.27228, 5e-4) && near(width, 0.72612, 1e-3),
          fmt("T0=%.6f T_pi/2=%.6f relative width=%.6f", t0, tp, width)};
}

Outcome criterion2() {
  const ModelParams p{1.0, -0.9, 1.7, 0.5};
  const auto r = optimize(p, kDeficit);
  const double s_min =
      nats_to_bits(objective_value(thermal_xstate(p), Objective::PostEntropy,
                                   MeasurementAngle(r.optimal_angle)));
  return {r.branch == Branch::Interior && near(r.optimal_angle, 0.40953, 5e-4) &&
              near(s_min, 1.57487, 5e-4),
          fmt("theta=%.6f rad S_post,min=%.6f bit", r.optimal_angle, s_min)};
}

Outcome criterion3() {
  const double target = *asymptote(1.0, -0.9);
  Sweep s;
  s.axis = SweepAxis::Temperature;
  s.from = s.to = 50.0;
  s.count = 1;
  s.solve_lo = 0.3;
  s.solve_hi = 0.6;
  const double b0 = trace_boundary(BoundaryKind::Zero, kDeficit, 1.0, -0.9, s).points.at(0).B;
  const double bp = trace_boundary(BoundaryKind::PiHalf, kDeficit, 1.0, -0.9, s).points.at(0).B;
  const double e0 = std::fabs(b0 / target - 1), ep = std::fabs(bp / target - 1);
  return {near(target, 0.43589, 5e-6) && e0 < 0.01 && ep < 0.01,
          fmt("asymptote=%.5f B_0=%.5f (%.2f%%) B_pi/2=%.5f (%.2f%%) at T=50", target, b0,
              100 * e0, bp, 100 * ep)};
}

Outcome criterion4() {
  const auto scan = scan_path(1.0, -0.9, 1.7, 0.1, 1.5, 400, kDeficit);
  const auto reports = classify(scan);
  const auto& r = reports.at(0);
  const auto fit = fit_exponent(scan, r, 0.02);
  return {r.kind == TransitionKind::ContinuousSecondOrder && near(fit.beta, 0.5, 0.02) &&
              near(fit.amplitude, 1.37, 0.05) && fit.r_squared > 0.999,
          fmt("T0=%.6f beta=%.4f A=%.4f R^2=%.6f (window 0.02, %zu points)", r.T_c, fit.beta,
              fit.amplitude, fit.r_squared, fit.points)};
}

Outcome criterion5() {
  const auto scan = scan_path(1.0, -1.5, 1.9, 0.1, 1.5, 400, kDeficit);
  const auto reports = classify(scan);
  if (reports.size() < 2) return {false, "expected two transitions"};
  const auto& jump = reports[0];
  const auto& rise = reports[1];
  const double birth = pair_birth_temperature(1.0, -1.5, 1.9, kDeficit, 0.62, 0.66);
  return {jump.kind == TransitionKind::CombinedFirstOrder && near(jump.T_c, 0.63329, 5e-4) &&
              near(jump.angle_jump, 0.64026, 1e-3) &&
              rise.kind == TransitionKind::ContinuousSecondOrder &&
              rise.below == Branch::PiHalf && near(rise.T_c, 0.59669, 5e-4) &&
              near(birth, 0.637, 0.002),
          fmt("T_c,0=%.6f jump=%.6f rad (%.2f deg) T_c,pi/2=%.6f pair birth=%.6f", jump.T_c,
              jump.angle_jump, jump.angle_jump * 180 / kPi, rise.T_c, birth)};
}

Outcome criterion6() {
  const auto reports = classify(scan_path(1.0, 1.02, 1.0, 0.1, 1.5, 400, kDiscord));
  if (reports.size() < 2) return {false, "expected two transitions"};
  const double tc0 = reports[0].T_c, tcp = reports[1].T_c;
  const double q = optimize({1.0, 1.02, 1.0, tc0}, kDiscord).value;
  const bool nats_ok = near(q, 0.13281, 1e-3);
  const bool bits_ok = near(nats_to_bits(q), 0.13281, 1e-3);
  const char* unit = bits_ok ? (nats_ok ? "both" : "bits") : (nats_ok ? "nats" : "neither");
  return {near(tc0, 0.85361, 5e-4) && near(tcp, 0.76106, 5e-4) && (nats_ok || bits_ok),
          fmt("T_C,0=%.6f T_C,pi/2=%.6f Q=%.6f nats = %.6f bits (matches: %s)", tc0, tcp, q,
              nats_to_bits(q), unit)};
}

Outcome criterion7() {
  const auto r = optimize({1.0, -0.9, 1.7, 0.45}, kDeficit);
  const double err = 100 * (r.branch_values.at_zero - r.value) / r.value;
  return {near(err, 1.04, 0.05), fmt("(Delta_0 - Delta)/Delta = %.4f%%", err)};
}

Outcome criterion8() {
  const auto a = scan_path(1.0, -0.9, 1.7, 0.1, 1.5, 400, kDeficit);
  const auto da = derivative_discontinuities(a, classify(a).at(0));
  const auto b = scan_path(1.0, -1.5, 1.9, 0.1, 1.5, 400, kDeficit);
  const auto db = derivative_discontinuities(b, classify(b).at(0));
  return {std::fabs(da.d1_jump) < 1e-4 && std::fabs(da.d2_jump) > 10 * da.d2_noise &&
              std::fabs(db.d1_jump) > 10 * db.d1_noise,
          fmt("T0: d1 jump=%.2e d2 jump=%.4f (noise %.1e); T_c,0: d1 jump=%.4f (noise %.1e)",
              da.d1_jump, da.d2_jump, da.d2_noise, db.d1_jump, db.d1_noise)};
}

Outcome criterion9() {
  std::string failed;
  for (const auto& r : verify::run_all())
    if (!r.passed) failed += (failed.empty() ? "" : ", ") + r.name;
  return {failed.empty(), failed.empty()
                              ? fmt("%zu suites passed", verify::suite_names().size())
                              : "failed: " + failed};
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3,
                                               criterion4, criterion5, criterion6,
                                               criterion7, criterion8, criterion9};
  int failures = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o{false, ""};
    try {
      o = c();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s\n", o.ok ? "PASS" : "FAIL", n, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
