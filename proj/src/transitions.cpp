#include "xcorr/transitions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"

namespace xcorr {

const char* to_string(TransitionKind kind) noexcept {
  switch (kind) {
    case TransitionKind::BranchSwapJump:
      return "branch-swap-jump";
    case TransitionKind::ContinuousSecondOrder:
      return "continuous-second-order";
    case TransitionKind::CombinedFirstOrder:
      return "combined-first-order";
  }
  return "unknown";
}

const char* to_string(TransitionSide side) noexcept {
  return side == TransitionSide::FromZero ? "from-zero" : "from-pi-half";
}

namespace {

PathSample sample_at(const PathScan& scan, double T) {
  const auto r = optimize({scan.J, scan.Jz, scan.B, T}, scan.kind);
  return {T, r.optimal_angle, r.value, r.branch};
}

bool needs_refinement(const PathSample& hi, const PathSample& lo) {
  return hi.branch != lo.branch ||
         std::fabs(hi.angle - lo.angle) > kJumpRefineThreshold;
}

// Shrinks [lo.T, hi.T] around the change to kRefineResolution. A midpoint
// belongs to the upper side when it shares the upper branch only, or, with
// equal branches, when its angle is closer to the upper angle.
std::pair<PathSample, PathSample> refine(const PathScan& scan, PathSample hi,
                                         PathSample lo) {
  while (hi.T - lo.T > kRefineResolution) {
    const auto mid = sample_at(scan, 0.5 * (hi.T + lo.T));
    bool upper;
    if (mid.branch == hi.branch && mid.branch != lo.branch)
      upper = true;
    else if (mid.branch == lo.branch && mid.branch != hi.branch)
      upper = false;
    else
      upper = std::fabs(mid.angle - hi.angle) < std::fabs(mid.angle - lo.angle);
    (upper ? hi : lo) = mid;
  }
  return {hi, lo};
}

double endpoint_angle(TransitionSide side) {
  return side == TransitionSide::FromZero ? 0.0 : kHalfPi;
}

double jump_at(const PathScan& scan, double T_c) {
  constexpr double kStraddle = 1e-8;
  return std::fabs(sample_at(scan, T_c + kStraddle).angle -
                   sample_at(scan, T_c - kStraddle).angle);
}

TransitionKind kind_from_jump(double jump) {
  if (jump < 1e-3) return TransitionKind::ContinuousSecondOrder;
  if (std::fabs(jump - kHalfPi) < 1e-3) return TransitionKind::BranchSwapJump;
  return TransitionKind::CombinedFirstOrder;
}

std::optional<double> root_in(const std::function<double(double)>& f, double lo,
                              double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (std::signbit(flo) == std::signbit(fhi) && flo != 0.0 && fhi != 0.0)
    return std::nullopt;
  return bisect(f, lo, hi, 1e-13);
}

TransitionReport locate(const PathScan& scan, const PathSample& hi,
                        const PathSample& lo) {
  const ModelParams base{scan.J, scan.Jz, scan.B, 1.0};
  auto at = [&](double T) {
    ModelParams p = base;
    p.T = T;
    return p;
  };
  // Widen slightly so roots sitting on a refined endpoint stay bracketed.
  const double margin = 10.0 * kRefineResolution;
  const double T_lo = std::max(lo.T - margin, 0.5 * lo.T);
  const double T_hi = hi.T + margin;

  TransitionReport rep{};
  rep.above = hi.branch;
  rep.below = lo.branch;

  const bool endpoints_only = hi.branch != Branch::Interior &&
                              lo.branch != Branch::Interior &&
                              hi.branch != lo.branch;
  if (endpoints_only) {
    auto diff = [&](double T) {
      return *boundary_function(BoundaryKind::BranchSwap, scan.kind, at(T));
    };
    rep.side = hi.branch == Branch::Zero ? TransitionSide::FromZero
                                         : TransitionSide::FromPiHalf;
    rep.T_c = root_in(diff, T_lo, T_hi).value_or(0.5 * (hi.T + lo.T));
    rep.angle_jump = jump_at(scan, rep.T_c);
    rep.kind = kind_from_jump(rep.angle_jump);
    return rep;
  }

  const Branch endpoint = hi.branch != Branch::Interior ? hi.branch : lo.branch;
  rep.side = endpoint == Branch::PiHalf ? TransitionSide::FromPiHalf
                                        : TransitionSide::FromZero;
  const Anchor anchor =
      rep.side == TransitionSide::FromZero ? Anchor::Zero : Anchor::PiHalf;

  if (endpoint != Branch::Interior) {
    auto curv = [&](double T) { return curvature(at(T), scan.kind, anchor); };
    if (const auto T_c = root_in(curv, T_lo, T_hi)) {
      const double jump = jump_at(scan, *T_c);
      if (jump < 1e-3) {
        rep.T_c = *T_c;
        rep.angle_jump = jump;
        rep.kind = TransitionKind::ContinuousSecondOrder;
        return rep;
      }
    }
    auto gap = [&](double T) {
      return prime_gap(at(T), scan.kind, anchor).value_or(1.0);
    };
    if (const auto T_c = root_in(gap, T_lo, T_hi)) {
      rep.T_c = *T_c;
      rep.angle_jump = jump_at(scan, *T_c);
      rep.kind = kind_from_jump(rep.angle_jump);
      return rep;
    }
  }

  // Interior-to-interior jump or an unbracketed change.
  rep.T_c = 0.5 * (hi.T + lo.T);
  rep.angle_jump = std::fabs(hi.angle - lo.angle);
  rep.kind = kind_from_jump(rep.angle_jump);
  return rep;
}

// Least squares via column-pivoting QR; throws IllConditionedFit on rank
// deficiency.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-13);
  if (qr.rank() < A.cols())
    throw Error(ErrorCode::IllConditionedFit, "least-squares design matrix is rank deficient");
  return qr.solve(y);
}

struct LineFit {
  double intercept;
  double slope;
  double r_squared;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[static_cast<std::size_t>(i)];
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = least_squares(A, b);
  const double mean = b.mean();
  const double ss_res = (A * c - b).squaredNorm();
  const double ss_tot = (b.array() - mean).square().sum();
  return {c(0), c(1), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

}  // namespace

PathScan scan_path(double J, double Jz, double B, double T_lo, double T_hi,
                   std::size_t n, CorrelationKind kind) {
  if (n < 200)
    throw Error(ErrorCode::InvalidArgument, "path scans need at least 200 samples");
  if (!(T_hi > T_lo))
    throw Error(ErrorCode::InvalidArgument, "empty temperature range");
  if (!(T_lo > 0.0))
    throw Error(ErrorCode::NonPositiveTemperature, "temperature must be positive");
  validate(ModelParams{J, Jz, B, T_lo});

  PathScan scan{J, Jz, B, kind, {}};
  const auto grid = linspace(T_hi, T_lo, n);
  std::vector<PathSample> coarse(n);
  parallel_for(n, [&](std::size_t i) { coarse[i] = sample_at(scan, grid[i]); });

  std::vector<std::pair<PathSample, PathSample>> refined(n - 1);
  std::vector<char> flagged(n - 1, 0);
  parallel_for(n - 1, [&](std::size_t i) {
    if (!needs_refinement(coarse[i], coarse[i + 1])) return;
    flagged[i] = 1;
    refined[i] = refine(scan, coarse[i], coarse[i + 1]);
  });

  for (std::size_t i = 0; i < n; ++i) {
    scan.samples.push_back(coarse[i]);
    if (i + 1 < n && flagged[i]) {
      const auto& [hi, lo] = refined[i];
      if (hi.T < coarse[i].T) scan.samples.push_back(hi);
      if (lo.T > coarse[i + 1].T) scan.samples.push_back(lo);
    }
  }
  return scan;
}

std::vector<TransitionReport> classify(const PathScan& scan) {
  std::vector<TransitionReport> out;
  const auto& s = scan.samples;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const bool branch_change = s[i].branch != s[i + 1].branch;
    const bool angle_jump = s[i].T - s[i + 1].T <= 1.5 * kRefineResolution &&
                            std::fabs(s[i].angle - s[i + 1].angle) > kJumpRefineThreshold;
    if (!branch_change && !angle_jump) continue;
    out.push_back(locate(scan, s[i], s[i + 1]));
  }
  if (out.empty())
    throw Error(ErrorCode::NoTransitionFound, "no branch change along the scanned path");
  return out;
}

ExponentFit fit_exponent(const PathScan& scan, const TransitionReport& report,
                         double window_frac) {
  if (report.kind != TransitionKind::ContinuousSecondOrder)
    throw Error(ErrorCode::InvalidArgument,
                "exponent fits need a continuous transition");
  if (!(window_frac > 0.0) || window_frac > 0.05)
    throw Error(ErrorCode::InvalidArgument, "window_frac must lie in (0, 0.05]");

  const double width = window_frac * report.T_c;
  const double direction =
      sample_at(scan, report.T_c - 0.5 * width).branch == Branch::Interior ? -1.0 : 1.0;
  const auto offsets = geomspace(1e-2 * width, width, 40);
  std::vector<PathSample> samples(offsets.size());
  parallel_for(offsets.size(), [&](std::size_t i) {
    samples[i] = sample_at(scan, report.T_c + direction * offsets[i]);
  });

  const double unit = std::fabs(scan.J) > 0.0 ? std::fabs(scan.J) : 1.0;
  std::vector<double> log_x, log_order, x, order_sq;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (samples[i].branch != Branch::Interior) continue;
    const double order = std::fabs(samples[i].angle - endpoint_angle(report.side));
    if (!(order > 0.0)) continue;
    const double xi = offsets[i] / unit;
    log_x.push_back(std::log(xi));
    log_order.push_back(std::log(order));
    x.push_back(xi);
    order_sq.push_back(order * order);
  }
  if (log_x.size() < 20)
    throw Error(ErrorCode::InsufficientPoints,
                "fewer than 20 interior samples in the fit window");
  const auto loglog = fit_line(log_x, log_order);
  const auto linear = fit_line(x, order_sq);
  return {loglog.slope, std::exp(loglog.intercept), linear.r_squared, window_frac,
          log_x.size()};
}

TaylorCoeffs taylor_coeffs(const ModelParams& p, CorrelationKind kind,
                           Anchor anchor, const TaylorOptions& options) {
  if (!(options.window > 0.0) || options.window > kHalfPi || options.samples < 16)
    throw Error(ErrorCode::InvalidArgument, "invalid Taylor fit window");
  const int terms = options.order == TaylorOrder::Taylor ? 9 : 4;

  struct Fit {
    double W;
    Eigen::VectorXd beta;
    double max_residual;
  };
  auto fit_on = [&](double W) {
    const auto t = linspace(0.0, W, options.samples);
    const auto n = static_cast<Eigen::Index>(t.size());
    // The profile is even about both endpoints.
    Eigen::MatrixXd A(n, terms);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      const double theta = anchor == Anchor::Zero ? ti : kHalfPi - ti;
      y(i) = correlation_profile(p, kind, std::clamp(theta, 0.0, kHalfPi));
      const double z = (ti / W) * (ti / W);
      double power = 1.0;
      for (int k = 0; k < terms; ++k) {
        A(i, k) = power;
        power *= z;
      }
    }
    Fit f{W, least_squares(A, y), 0.0};
    f.max_residual = (A * f.beta - y).cwiseAbs().maxCoeff();
    return f;
  };

  Fit fit = fit_on(options.window);
  // Close to a pure state the series converges on a disc smaller than the
  // requested window; shrink until the polynomial represents the profile.
  if (options.order == TaylorOrder::Taylor)
    while (fit.max_residual > kTaylorResidualTarget && fit.W > kMinTaylorWindow)
      fit = fit_on(0.5 * fit.W);

  const double W = fit.W;
  auto coeff = [&](int k) {
    return k < terms ? fit.beta(k) / std::pow(W, 2 * k) : 0.0;
  };

  TaylorCoeffs out{};
  out.anchor = anchor;
  out.order = options.order;
  out.window = W;
  out.c0 = coeff(0);
  out.c2 = coeff(1);
  out.c4 = coeff(2);
  out.c6 = coeff(3);
  out.max_residual = fit.max_residual;
  out.closed_form_c2 = 0.5 * curvature(p, kind, anchor);

  if (options.order == TaylorOrder::Sextic && out.c6 != 0.0) {
    const double a1 = out.c2 / out.c6;
    const double a2 = out.c4 / out.c6;
    out.alpha1 = a1;
    out.alpha2 = a2;
    // d/dt (t^6 + a2 t^4 + a1 t^2) = 2t (3u^2 + 2 a2 u + a1), u = t^2.
    const double disc = a2 * a2 - 3.0 * a1;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      for (double u : {(-a2 - root) / 3.0, (-a2 + root) / 3.0})
        if (u > 0.0 && std::sqrt(u) < W) out.extrema.push_back(std::sqrt(u));
      if (out.extrema.size() == 2 && out.extrema[0] == out.extrema[1])
        out.extrema.pop_back();
      std::sort(out.extrema.begin(), out.extrema.end());
    }
  }
  return out;
}

DerivativeJumps derivative_discontinuities(const PathScan& scan,
                                           const TransitionReport& report) {
  constexpr double h = 1e-4;
  constexpr double offset = 1e-8;
  auto value = [&](double T) { return sample_at(scan, T).value; };

  // Stencils on T_c + sign * (offset + k*step), k = 0..3, expressed as
  // derivatives with respect to T.
  auto one_sided = [&](double sign, double step) {
    std::array<double, 4> f{};
    for (int k = 0; k < 4; ++k) f[k] = value(report.T_c + sign * (offset + k * step));
    const double d1 = sign * (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * step);
    const double d2 = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (step * step);
    return std::pair{d1, d2};
  };
  const auto [up1, up2] = one_sided(1.0, h);
  const auto [dn1, dn2] = one_sided(-1.0, h);
  const auto [up1c, up2c] = one_sided(1.0, 2.0 * h);
  const auto [dn1c, dn2c] = one_sided(-1.0, 2.0 * h);
  return {up1 - dn1, up2 - dn2,
          std::fabs(up1 - up1c) + std::fabs(dn1 - dn1c),
          std::fabs(up2 - up2c) + std::fabs(dn2 - dn2c)};
}

double pair_birth_temperature(double J, double Jz, double B,
                              CorrelationKind kind, double T_lo, double T_hi) {
  if (!(T_hi > T_lo) || !(T_lo > 0.0))
    throw Error(ErrorCode::InvalidArgument, "invalid pair-birth window");
  auto indicator = [&](double T) {
    return interior_stationary_points({J, Jz, B, T}, kind).empty() ? 1.0 : -1.0;
  };
  if (indicator(T_lo) == indicator(T_hi))
    throw Error(ErrorCode::NoBracket,
                "interior stationary points do not appear within the window");
  return bisect(indicator, T_lo, T_hi, 1e-10);
}

}  // namespace xcorr
