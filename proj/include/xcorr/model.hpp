#pragma once

// Two-qubit XXZ dimer in a uniform field at thermal equilibrium:
//   H = -1/2 [J (sx sx + sy sy) + Jz sz sz] - B/2 (sz1 + sz2).
// All energies and the temperature share one (arbitrary) unit; entropies
// are in nats.

#include <array>

namespace xcorr {

struct ModelParams {
  double J = 1.0;
  double Jz = 0.0;
  double B = 0.0;
  double T = 1.0;
};

/// Smallest supported T / max(|J|, |Jz|, |B|, 1).
inline constexpr double kMinReducedTemperature = 1e-3;

/// Throws InvalidArgument (non-finite), NonPositiveTemperature or
/// RangeUnsupported.
void validate(const ModelParams& p);

/// E1,2 = -Jz/2 -+ B and E3,4 = Jz/2 -+ J, ordered so that the Boltzmann
/// weights line up with (a, d, b+v, b-v).
struct Spectrum {
  std::array<double, 4> levels;
};

Spectrum spectrum(const ModelParams& p) noexcept;

/// Z = exp(-shift/T) * reduced, where shift is the lowest level and
/// reduced = sum exp((shift - E_i)/T) lies in [1, 4].
struct PartitionFunction {
  double value;      // may be +inf for extreme T
  double log_value;
  double shift;
  double reduced;
};

PartitionFunction partition_function(const ModelParams& p);

/// Gibbs X state with entries a = rho(00,00), b = rho(01,01) = rho(10,10),
/// v = rho(01,10), d = rho(11,11).
struct XState {
  double a = 0.25;
  double b = 0.25;
  double d = 0.25;
  double v = 0.0;

  double s1() const noexcept { return a - d; }
  double c1() const noexcept { return 2.0 * v; }
  double c3() const noexcept { return a - 2.0 * b + d; }
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Throws InvalidState unless a, d >= 0, b >= |v| and a + 2b + d = 1.
void validate(const XState& s);

XState thermal_xstate(const ModelParams& p);

/// (a, b+v, b-v, d).
std::array<double, 4> state_eigenvalues(const XState& s) noexcept;

/// Thermodynamic entropy ln Z + <E>/T.
double thermo_entropy(const ModelParams& p);

/// T dS/dT by Richardson-extrapolated central differences.
double heat_capacity(const ModelParams& p);

}  // namespace xcorr
