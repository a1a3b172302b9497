#include "xcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"

namespace xcorr {

namespace {

struct Boltzmann {
  std::array<double, 4> probabilities;  // ordered as Spectrum::levels
  PartitionFunction z;
};

Boltzmann boltzmann(const ModelParams& p) {
  validate(p);
  const auto levels = spectrum(p).levels;
  const double shift = *std::min_element(levels.begin(), levels.end());
  std::array<double, 4> w{};
  double reduced = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    w[i] = std::exp((shift - levels[i]) / p.T);
    reduced += w[i];
  }
  for (auto& x : w) x /= reduced;
  const double log_z = std::log(reduced) - shift / p.T;
  return {w, {std::exp(log_z), log_z, shift, reduced}};
}

}  // namespace

void validate(const ModelParams& p) {
  if (!std::isfinite(p.J) || !std::isfinite(p.Jz) || !std::isfinite(p.B) ||
      !std::isfinite(p.T))
    throw Error(ErrorCode::InvalidArgument, "model parameters must be finite");
  if (!(p.T > 0.0))
    throw Error(ErrorCode::NonPositiveTemperature,
                "temperature must be strictly positive");
  const double scale =
      std::max({std::fabs(p.J), std::fabs(p.Jz), std::fabs(p.B), 1.0});
  if (p.T / scale < kMinReducedTemperature) {
    std::ostringstream msg;
    msg << "T/max(|J|,|Jz|,|B|,1) = " << p.T / scale << " is below "
        << kMinReducedTemperature;
    throw Error(ErrorCode::RangeUnsupported, msg.str());
  }
}

Spectrum spectrum(const ModelParams& p) noexcept {
  return {{-0.5 * p.Jz - p.B, -0.5 * p.Jz + p.B, 0.5 * p.Jz - p.J,
           0.5 * p.Jz + p.J}};
}

PartitionFunction partition_function(const ModelParams& p) {
  return boltzmann(p).z;
}

void validate(const XState& s) {
  if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.d) ||
      !std::isfinite(s.v))
    throw Error(ErrorCode::InvalidState, "X state entries must be finite");
  constexpr double kTol = 1e-14;
  if (s.a < -kTol || s.d < -kTol || s.b - std::fabs(s.v) < -kTol)
    throw Error(ErrorCode::InvalidState,
                "X state is not positive semidefinite");
  if (std::fabs(s.a + 2.0 * s.b + s.d - 1.0) > kNormalizationTolerance)
    throw Error(ErrorCode::InvalidState, "X state trace differs from one");
}

XState thermal_xstate(const ModelParams& p) {
  const auto w = boltzmann(p).probabilities;
  // w = (a, d, b+v, b-v)
  return {w[0], 0.5 * (w[2] + w[3]), w[1], 0.5 * (w[2] - w[3])};
}

std::array<double, 4> state_eigenvalues(const XState& s) noexcept {
  return {s.a, s.b + s.v, s.b - s.v, s.d};
}

double thermo_entropy(const ModelParams& p) {
  const auto bz = boltzmann(p);
  const auto levels = spectrum(p).levels;
  double mean_energy = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    mean_energy += bz.probabilities[i] * levels[i];
  return bz.z.log_value + mean_energy / p.T;
}

double heat_capacity(const ModelParams& p) {
  validate(p);
  const double h = 1e-5 * p.T;
  auto central = [&](double step) {
    ModelParams up = p;
    ModelParams down = p;
    up.T += step;
    down.T -= step;
    return (thermo_entropy(up) - thermo_entropy(down)) / (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  return p.T * (4.0 * fine - coarse) / 3.0;
}

}  // namespace xcorr
