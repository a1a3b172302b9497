#include "xcorr/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "xcorr/error.hpp"

namespace xcorr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::RangeUnsupported: return "RangeUnsupported";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::NearTransition: return "NearTransition";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::PairNotBorn: return "PairNotBorn";
    case ErrorCode::NoTransitionFound: return "NoTransitionFound";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
  }
  return "Unknown";
}

double shannon_entropy(std::span<const double> probabilities) noexcept {
  double s = 0.0;
  for (double p : probabilities) s -= xlogx(p);
  return s;
}

double binary_entropy_from_bias(double u) noexcept {
  // ln2 - [(1+u)ln(1+u) + (1-u)ln(1-u)]/2, with log1p for small |u|.
  const double up = 1.0 + u;
  const double um = 1.0 - u;
  const double tp = up > 0.0 ? up * std::log1p(u) : 0.0;
  const double tm = um > 0.0 ? um * std::log1p(-u) : 0.0;
  return kLn2 - 0.5 * (tp + tm);
}

std::vector<double> linspace(double from, double to, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = from;
    return out;
  }
  const double step = (to - from) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = from + step * static_cast<double>(i);
  out.back() = to;
  return out;
}

std::vector<double> geomspace(double from, double to, std::size_t count) {
  if (!(from > 0.0) || !(to > 0.0))
    throw Error(ErrorCode::InvalidArgument, "geomspace needs positive ends");
  auto logs = linspace(std::log(from), std::log(to), count);
  for (auto& x : logs) x = std::exp(x);
  if (count > 1) {
    logs.front() = from;
    logs.back() = to;
  }
  return logs;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tolerance, int max_iterations) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw Error(ErrorCode::NoBracket, "bisect: no sign change in bracket");
  for (int it = 0; it < max_iterations && std::fabs(hi - lo) > tolerance;
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo,
                             double hi, double tolerance, int max_iterations) {
  constexpr double kGolden = 0.3819660112501051;
  constexpr double kEps = 1e-15;
  double a = std::min(lo, hi);
  double b = std::max(lo, hi);
  double x = a + kGolden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = kEps * std::fabs(x) + tolerance / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::fabs(e) > tol1) {
      // Parabola through (v, fv), (w, fw), (x, fx).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double e_prev = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m ? b : a) - x;
      d = kGolden * e;
    }
    const double u =
        std::fabs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

std::size_t worker_count() noexcept {
  if (const char* env = std::getenv("XCORR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace xcorr
