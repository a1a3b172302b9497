// Command-line front end. Talks to the library only through xcorr.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xcorr.h"

using nlohmann::ordered_json;

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kNoTransition = 3, kNoBracket = 4 };

struct Failure {
  int exit_code;
  std::string message;
};

void check(xcorr_status status) {
  if (status == XCORR_OK) return;
  std::string msg = std::string(xcorr_status_string(status)) + ": " + xcorr_last_error();
  int code = kInvalid;
  if (status == XCORR_NO_BRACKET || status == XCORR_PAIR_NOT_BORN) code = kNoBracket;
  throw Failure{code, msg};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Output target: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Failure{kInvalid, "cannot open " + path};
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Preset {
  std::optional<double> J, Jz, B, T, T_min, T_max, B_min, B_max;
  std::optional<xcorr_kind> kind;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"fig2", {1.0, -0.9, 1.7, 0.5, 0.05, 2.0, 0.0, 3.0, XCORR_DEFICIT}},
      {"fig3", {1.0, -0.9, 1.7, 0.5, 0.1, 1.0, 0.0, 3.0, XCORR_DEFICIT}},
      {"fig5", {1.0, -1.5, 1.9, 0.63329, 0.05, 2.0, 0.0, 3.0, XCORR_DEFICIT}},
      {"fig6", {1.0, -1.5, 1.9, 0.63329, 0.3, 1.0, 0.0, 3.0, XCORR_DEFICIT}},
      {"fig7", {1.0, 1.02, 1.0, 0.83, 0.05, 2.0, 0.0, 3.0, XCORR_DISCORD}},
      {"fig8", {1.0, 1.02, 1.0, 0.85361, 0.5, 1.2, 0.0, 3.0, XCORR_DISCORD}},
  };
  return table;
}

struct Config {
  std::string preset;
  double J = 1.0, Jz = 0.0, B = 0.0, T = 1.0;
  double T_min = 0.1, T_max = 2.0, B_min = 0.0, B_max = 3.0;
  xcorr_kind kind = XCORR_DEFICIT;
  std::string unit;
  std::string output;
};

struct Options {
  CLI::Option *J = nullptr, *Jz = nullptr, *B = nullptr, *T = nullptr;
  CLI::Option *T_min = nullptr, *T_max = nullptr, *B_min = nullptr, *B_max = nullptr;
  CLI::Option* kind = nullptr;
};

const std::map<std::string, xcorr_kind> kKindMap{{"deficit", XCORR_DEFICIT},
                                                 {"discord", XCORR_DISCORD}};

void add_params(CLI::App* cmd, Config& c, Options& o, bool point) {
  o.J = cmd->add_option("--J", c.J, "exchange coupling J")->capture_default_str();
  o.Jz = cmd->add_option("--Jz", c.Jz, "anisotropy Jz")->capture_default_str();
  if (point) {
    o.B = cmd->add_option("--B", c.B, "magnetic field")->capture_default_str();
    o.T = cmd->add_option("--T", c.T, "temperature")->capture_default_str();
  }
  cmd->add_option("--preset", c.preset, "named parameter set")
      ->check(CLI::IsMember({"fig2", "fig3", "fig5", "fig6", "fig7", "fig8"}));
  cmd->add_option("-o,--output", c.output, "output path (default stdout)");
}

void add_kind(CLI::App* cmd, Config& c, Options& o, const std::string& flag) {
  o.kind = cmd->add_option(flag, c.kind, "deficit or discord")
               ->transform(CLI::CheckedTransformer(kKindMap, CLI::ignore_case));
}

void add_unit(CLI::App* cmd, Config& c) {
  cmd->add_option("--unit", c.unit, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
}

void add_range(CLI::App* cmd, Config& c, Options& o, bool field_range) {
  o.T_min = cmd->add_option("--T-min", c.T_min, "lowest temperature")->capture_default_str();
  o.T_max = cmd->add_option("--T-max", c.T_max, "highest temperature")->capture_default_str();
  if (field_range) {
    o.B_min = cmd->add_option("--B-min", c.B_min, "lowest field")->capture_default_str();
    o.B_max = cmd->add_option("--B-max", c.B_max, "highest field")->capture_default_str();
  }
}

template <class T>
void fill(CLI::Option* opt, T& field, const std::optional<T>& value) {
  if (value && (!opt || opt->count() == 0)) field = *value;
}

void apply_preset(Config& c, const Options& o) {
  if (c.preset.empty()) return;
  const Preset& p = presets().at(c.preset);
  fill(o.J, c.J, p.J);
  fill(o.Jz, c.Jz, p.Jz);
  fill(o.B, c.B, p.B);
  fill(o.T, c.T, p.T);
  fill(o.T_min, c.T_min, p.T_min);
  fill(o.T_max, c.T_max, p.T_max);
  fill(o.B_min, c.B_min, p.B_min);
  fill(o.B_max, c.B_max, p.B_max);
  fill(o.kind, c.kind, p.kind);
}

double scale(const Config& c) { return c.unit == "bits" ? 1.0 / kLn2 : 1.0; }

xcorr_params params(const Config& c) { return {c.J, c.Jz, c.B, c.T}; }

ordered_json params_json(const Config& c) {
  return {{"J", c.J}, {"Jz", c.Jz}, {"B", c.B}, {"T", c.T}};
}

// ---- commands -------------------------------------------------------------

int cmd_point(const Config& c) {
  xcorr_correlation r{};
  const xcorr_params p = params(c);
  check(xcorr_optimize(&p, c.kind, &r));
  const double k = scale(c);
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "point";
  j["params"] = params_json(c);
  j["kind"] = xcorr_kind_name(c.kind);
  j["unit"] = c.unit;
  j["value"] = r.value * k;
  j["optimal_angle"] = {{"radians", r.optimal_angle}, {"degrees", r.optimal_angle * 180.0 / kPi}};
  j["branch"] = xcorr_branch_name(r.branch);
  j["degenerate"] = static_cast<bool>(r.degenerate);
  ordered_json bv;
  bv["at_zero"] = r.at_zero * k;
  bv["at_pi_half"] = r.at_pi_half * k;
  bv["interior"] = r.has_interior ? ordered_json(r.interior * k) : ordered_json(nullptr);
  bv["interior_angle"] = r.has_interior ? ordered_json(r.interior_angle) : ordered_json(nullptr);
  j["branch_values"] = bv;
  Sink sink(c.output);
  sink.out() << j.dump(2) << '\n';
  return kOk;
}

int cmd_profile(const Config& c, int points) {
  if (points < 91) throw Failure{kInvalid, "profile needs at least 91 angles"};
  const double k = scale(c);
  const xcorr_params p = params(c);
  Sink sink(c.output);
  auto& out = sink.out();
  out << "theta_rad,S_post,S_cond,deficit,discord\n";
  for (int i = 0; i < points; ++i) {
    const double theta = 0.5 * kPi * i / (points - 1);
    xcorr_profile_row row{};
    check(xcorr_profile(&p, std::min(theta, 0.5 * kPi), &row));
    out << fmt(row.theta) << ',' << fmt(row.post_entropy * k) << ','
        << fmt(row.conditional_entropy * k) << ',' << fmt(row.deficit * k) << ','
        << fmt(row.discord * k) << '\n';
  }
  return kOk;
}

struct ScanHandle {
  xcorr_path_scan* p = nullptr;
  ~ScanHandle() { xcorr_path_scan_free(p); }
};

struct TransitionsHandle {
  xcorr_transitions* p = nullptr;
  ~TransitionsHandle() { xcorr_transitions_free(p); }
};

int cmd_scan(const Config& c, std::size_t points, const std::string& reports_path,
             bool require_transition, double fit_window) {
  ScanHandle scan;
  check(xcorr_scan_path(c.J, c.Jz, c.B, c.T_min, c.T_max, points, c.kind, &scan.p));
  const double k = scale(c);
  {
    Sink sink(c.output);
    auto& out = sink.out();
    out << "T,angle_rad,value,branch\n";
    for (std::size_t i = 0; i < xcorr_path_scan_size(scan.p); ++i) {
      xcorr_path_sample s{};
      check(xcorr_path_scan_get(scan.p, i, &s));
      out << fmt(s.T) << ',' << fmt(s.angle) << ',' << fmt(s.value * k) << ','
          << xcorr_branch_name(s.branch) << '\n';
    }
  }

  TransitionsHandle reports;
  const xcorr_status st = xcorr_classify(scan.p, &reports.p);
  if (st == XCORR_NO_TRANSITION_FOUND) {
    if (require_transition) throw Failure{kNoTransition, xcorr_last_error()};
  } else {
    check(st);
  }

  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < xcorr_transitions_size(reports.p); ++i) {
    xcorr_transition t{};
    check(xcorr_transitions_get(reports.p, i, &t));
    ordered_json j;
    j["kind"] = xcorr_transition_kind_name(t.kind);
    j["T_c"] = t.T_c;
    j["angle_jump"] = t.angle_jump;
    j["angle_jump_degrees"] = t.angle_jump * 180.0 / kPi;
    j["side"] = xcorr_side_name(t.side);
    j["above"] = xcorr_branch_name(t.above);
    j["below"] = xcorr_branch_name(t.below);
    j["fit"] = nullptr;
    if (t.kind == XCORR_TRANSITION_CONTINUOUS && fit_window > 0.0) {
      xcorr_exponent_fit f{};
      if (xcorr_fit_exponent(scan.p, &t, fit_window, &f) == XCORR_OK)
        j["fit"] = {{"beta", f.beta},
                    {"amplitude", f.amplitude},
                    {"r_squared", f.r_squared},
                    {"window", f.window_frac},
                    {"points", f.points}};
    }
    arr.push_back(j);
  }
  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "scan";
  doc["params"] = {{"J", c.J}, {"Jz", c.Jz}, {"B", c.B}, {"T_min", c.T_min}, {"T_max", c.T_max}};
  doc["kind"] = xcorr_kind_name(c.kind);
  doc["transitions"] = arr;

  std::string path = reports_path;
  if (path.empty() && !c.output.empty() && c.output != "-") path = c.output + ".json";
  if (path.empty()) {
    std::cerr << doc.dump(2) << '\n';
  } else {
    Sink sink(path);
    sink.out() << doc.dump(2) << '\n';
  }
  return kOk;
}

const std::map<std::string, xcorr_boundary_kind> kBoundaryMap{
    {"zero", XCORR_BOUNDARY_ZERO},
    {"pi-half", XCORR_BOUNDARY_PI_HALF},
    {"zero-prime", XCORR_BOUNDARY_ZERO_PRIME},
    {"branch-swap", XCORR_BOUNDARY_BRANCH_SWAP}};

void write_boundary(std::ostream& out, const xcorr_boundary* b, bool header) {
  if (header) out << "T,B,kind,residual\n";
  const char* name = xcorr_boundary_kind_name(xcorr_boundary_get_kind(b));
  for (std::size_t i = 0; i < xcorr_boundary_size(b); ++i) {
    xcorr_boundary_point pt{};
    check(xcorr_boundary_get(b, i, &pt));
    out << fmt(pt.T) << ',' << fmt(pt.B) << ',' << name << ',' << fmt(pt.residual) << '\n';
  }
}

int cmd_boundary(const Config& c, xcorr_boundary_kind bkind, const std::string& axis,
                 std::size_t count, std::size_t scan_points) {
  xcorr_sweep sweep;
  xcorr_sweep_init(&sweep);
  if (axis == "temperature") {
    sweep.axis = XCORR_SWEEP_TEMPERATURE;
    sweep.from = c.T_min;
    sweep.to = c.T_max;
    sweep.solve_lo = c.B_min;
    sweep.solve_hi = c.B_max;
  } else {
    sweep.axis = XCORR_SWEEP_FIELD;
    sweep.from = c.B_min;
    sweep.to = c.B_max;
    sweep.solve_lo = c.T_min;
    sweep.solve_hi = c.T_max;
  }
  sweep.count = count;
  sweep.scan_points = scan_points;
  xcorr_boundary* b = nullptr;
  check(xcorr_trace_boundary(bkind, c.kind, c.J, c.Jz, &sweep, &b));
  std::unique_ptr<xcorr_boundary, void (*)(xcorr_boundary*)> guard(b, xcorr_boundary_free);
  Sink sink(c.output);
  write_boundary(sink.out(), b, true);
  return kOk;
}

int cmd_phase_diagram(const Config& c, std::size_t nT, std::size_t nB,
                      const std::string& boundary_prefix) {
  const xcorr_raster_spec spec{c.T_min, c.T_max, c.B_min, c.B_max, nT, nB};
  xcorr_phase_diagram* d = nullptr;
  check(xcorr_rasterize(c.J, c.Jz, &spec, c.kind, &d));
  std::unique_ptr<xcorr_phase_diagram, void (*)(xcorr_phase_diagram*)> guard(
      d, xcorr_phase_diagram_free);
  {
    Sink sink(c.output);
    auto& out = sink.out();
    out << "T,B,region\n";
    for (std::size_t iB = 0; iB < xcorr_phase_diagram_B_cells(d); ++iB)
      for (std::size_t iT = 0; iT < xcorr_phase_diagram_T_cells(d); ++iT)
        out << fmt(xcorr_phase_diagram_T(d, iT)) << ',' << fmt(xcorr_phase_diagram_B(d, iB))
            << ',' << xcorr_branch_name(xcorr_phase_diagram_label(d, iT, iB)) << '\n';
  }
  std::string prefix = boundary_prefix;
  if (prefix.empty() && !c.output.empty() && c.output != "-") {
    prefix = c.output;
    if (prefix.size() > 4 && prefix.substr(prefix.size() - 4) == ".csv")
      prefix.resize(prefix.size() - 4);
  }
  for (std::size_t k = 0; k < xcorr_phase_diagram_boundary_count(d); ++k) {
    const xcorr_boundary* b = xcorr_phase_diagram_boundary(d, k);
    if (prefix.empty()) {
      std::cerr << "# boundary " << xcorr_boundary_kind_name(xcorr_boundary_get_kind(b)) << '\n';
      write_boundary(std::cerr, b, true);
      continue;
    }
    Sink sink(prefix + "_boundary_" + xcorr_boundary_kind_name(xcorr_boundary_get_kind(b)) +
              ".csv");
    write_boundary(sink.out(), b, true);
  }
  if (const auto n = xcorr_phase_diagram_conflicts(d); n > 0)
    std::cerr << "warning: " << n << " label changes without a nearby boundary\n";
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  xcorr_verify_report* r = nullptr;
  check(xcorr_verify_run(suite.empty() ? nullptr : suite.c_str(), seed, &r));
  std::unique_ptr<xcorr_verify_report, void (*)(xcorr_verify_report*)> guard(
      r, xcorr_verify_report_free);
  bool all = true;
  for (std::size_t i = 0; i < xcorr_verify_report_size(r); ++i) {
    xcorr_suite_result s{};
    check(xcorr_verify_report_get(r, i, &s));
    all = all && s.passed;
    std::printf("%s %-26s max_error=%.3g tolerance=%.3g  %s\n", s.passed ? "PASS" : "FAIL",
                s.name, s.max_error, s.tolerance, s.detail);
  }
  return all ? kOk : kVerifyFailed;
}

int cmd_taylor(const Config& c, const std::string& anchor, const std::string& order,
               double window) {
  xcorr_taylor_coeffs t{};
  const xcorr_anchor a = anchor == "pi-half" ? XCORR_ANCHOR_PI_HALF : XCORR_ANCHOR_ZERO;
  const xcorr_taylor_order o = order == "sextic" ? XCORR_SEXTIC : XCORR_TAYLOR;
  const xcorr_params p = params(c);
  check(xcorr_taylor(&p, c.kind, a, o, window, &t));
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "taylor";
  j["params"] = params_json(c);
  j["kind"] = xcorr_kind_name(c.kind);
  j["anchor"] = anchor;
  j["order"] = order;
  j["window"] = t.window;
  j["unit"] = "nats";
  j["c0"] = t.c0;
  j["c2"] = t.c2;
  j["c4"] = t.c4;
  j["c6"] = t.c6;
  j["closed_form_c2"] = t.closed_form_c2;
  j["max_residual"] = t.max_residual;
  if (t.has_alpha) {
    j["alpha1"] = t.alpha1;
    j["alpha2"] = t.alpha2;
    j["extrema"] = std::vector<double>(t.extrema, t.extrema + t.extrema_count);
  }
  Sink sink(c.output);
  sink.out() << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work deficit and quantum discord of the thermal XXZ dimer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(xcorr_version()));

  Config c;
  std::map<CLI::App*, Options> o;  // per subcommand

  auto* point = app.add_subcommand("point", "optimised correlation at one (T, B)");
  add_params(point, c, o[point], true);
  add_kind(point, c, o[point], "--kind");
  add_unit(point, c);

  int profile_points = 181;
  auto* profile = app.add_subcommand("profile", "entropies versus measurement angle (CSV)");
  add_params(profile, c, o[profile], true);
  add_unit(profile, c);
  profile->add_option("--points", profile_points, "number of angles (>= 91)")
      ->capture_default_str();

  std::size_t scan_points = 400;
  std::string reports_path;
  bool require_transition = false;
  double fit_window = 0.02;
  auto* scan = app.add_subcommand("scan", "temperature path at fixed field (CSV + JSON)");
  add_params(scan, c, o[scan], false);
  o[scan].B = scan->add_option("--B", c.B, "magnetic field")->capture_default_str();
  add_kind(scan, c, o[scan], "--kind");
  add_unit(scan, c);
  add_range(scan, c, o[scan], false);
  scan->add_option("--points", scan_points, "samples (>= 200)")->capture_default_str();
  scan->add_option("--reports", reports_path, "transition report JSON (default <output>.json)");
  scan->add_flag("--require-transition", require_transition, "exit 3 when none is found");
  scan->add_option("--fit-window", fit_window, "exponent fit window, 0 disables")
      ->capture_default_str();

  std::string boundary_kind = "zero";
  std::string axis = "field";
  std::size_t sweep_count = 61;
  std::size_t solve_points = 400;
  auto* boundary = app.add_subcommand("boundary", "trace one phase boundary (CSV)");
  add_params(boundary, c, o[boundary], false);
  boundary->add_option("--kind", boundary_kind, "zero|pi-half|zero-prime|branch-swap")
      ->check(CLI::IsMember({"zero", "pi-half", "zero-prime", "branch-swap"}))
      ->capture_default_str();
  add_kind(boundary, c, o[boundary], "--correlation");
  add_range(boundary, c, o[boundary], true);
  boundary->add_option("--axis", axis, "swept coordinate: field or temperature")
      ->check(CLI::IsMember({"field", "temperature"}))
      ->capture_default_str();
  boundary->add_option("--count", sweep_count, "points along the swept coordinate")
      ->capture_default_str();
  boundary->add_option("--scan-points", solve_points, "bracketing scan resolution")
      ->capture_default_str();

  std::size_t nT = 64, nB = 64;
  std::string boundary_prefix;
  auto* phase = app.add_subcommand("phase-diagram", "labelled (T, B) grid plus boundaries");
  add_params(phase, c, o[phase], false);
  add_kind(phase, c, o[phase], "--kind");
  add_range(phase, c, o[phase], true);
  phase->add_option("--nT", nT, "cells along T (>= 16)")->capture_default_str();
  phase->add_option("--nB", nB, "cells along B (>= 16)")->capture_default_str();
  phase->add_option("--boundary-prefix", boundary_prefix,
                    "boundary CSV prefix (default derived from --output)");

  std::string suite;
  std::uint64_t seed = 20240917;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", suite, "run a single suite");
  verify->add_option("--seed", seed, "random seed")->capture_default_str();

  std::string anchor = "zero", order = "taylor";
  double window = 0.15;
  auto* taylor = app.add_subcommand("taylor", "even-polynomial fit of a profile (JSON)");
  add_params(taylor, c, o[taylor], true);
  add_kind(taylor, c, o[taylor], "--kind");
  taylor->add_option("--anchor", anchor, "zero or pi-half")
      ->check(CLI::IsMember({"zero", "pi-half"}))
      ->capture_default_str();
  taylor->add_option("--order", order, "taylor or sextic")
      ->check(CLI::IsMember({"taylor", "sextic"}))
      ->capture_default_str();
  taylor->add_option("--window", window, "fit half-width in rad")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    const auto parsed = app.get_subcommands();
    if (!parsed.empty()) apply_preset(c, o[parsed.front()]);
    if (c.unit.empty())
      c.unit = (profile->parsed() || scan->parsed()) ? "bits" : "nats";
    if (point->parsed()) return cmd_point(c);
    if (profile->parsed()) return cmd_profile(c, profile_points);
    if (scan->parsed())
      return cmd_scan(c, scan_points, reports_path, require_transition, fit_window);
    if (boundary->parsed())
      return cmd_boundary(c, kBoundaryMap.at(boundary_kind), axis, sweep_count, solve_points);
    if (phase->parsed()) return cmd_phase_diagram(c, nT, nB, boundary_prefix);
    if (verify->parsed()) return cmd_verify(suite, seed);
    if (taylor->parsed()) return cmd_taylor(c, anchor, order, window);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  }
  return kInvalid;
}
