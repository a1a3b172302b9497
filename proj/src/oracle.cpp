#include "xcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xcorr/error.hpp"
#include "xcorr/numeric.hpp"

namespace xcorr::oracle {

DenseHermitian4 assemble_state(const XState& s) {
  validate(s);
  DenseHermitian4 rho;
  rho(0, 0) = s.a;
  rho(1, 1) = s.b;
  rho(2, 2) = s.b;
  rho(3, 3) = s.d;
  rho(1, 2) = s.v;
  rho(2, 1) = s.v;
  return rho;
}

DenseHermitian4 lift_to_b(const DenseHermitian2& m) {
  DenseHermitian4 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) out(2 * a + i, 2 * a + j) = m(i, j);
  return out;
}

DenseHermitian2 rotation(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  DenseHermitian2 v;
  v(0, 0) = c;
  v(0, 1) = -std::conj(e) * s;
  v(1, 0) = e * s;
  v(1, 1) = c;
  return v;
}

DenseHermitian2 Projector::matrix() const {
  if (k != 0 && k != 1)
    throw Error(ErrorCode::InvalidArgument, "projector index must be 0 or 1");
  DenseHermitian2 pk;
  pk(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = 1.0;
  const auto v = rotation(theta, phi);
  return v * pk * v.adjoint();
}

void validate_state(const DenseHermitian4& rho) {
  if (rho.hermiticity_defect() > 1e-14)
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex{1.0}) > 1e-12)
    throw Error(ErrorCode::InvalidState, "density matrix trace differs from one");
  const auto eig = eigh<4>(rho);
  if (eig.values.back() < -1e-12)
    throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
}

DenseHermitian4 post_measure(const DenseHermitian4& rho, double theta,
                             double phi) {
  validate_state(rho);
  DenseHermitian4 out;
  for (int k = 0; k < 2; ++k) {
    const auto pi = lift_to_b(Projector{theta, phi, k}.matrix());
    out = out + pi * rho * pi.adjoint();
  }
  return out;
}

DenseHermitian2 reduced_b(const DenseHermitian4& rho) {
  DenseHermitian2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t a = 0; a < 2; ++a) out(i, j) += rho(2 * a + i, 2 * a + j);
  return out;
}

DenseHermitian2 reduced_a(const DenseHermitian4& rho) {
  DenseHermitian2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t b = 0; b < 2; ++b) out(i, j) += rho(2 * i + b, 2 * j + b);
  return out;
}

const DenseHermitian2& MeasurementOutcome::conditional_state() const {
  if (degenerate)
    throw Error(ErrorCode::DegenerateOutcome,
                "conditional state undefined for a zero-probability outcome");
  return rho_a;
}

std::array<MeasurementOutcome, 2> conditional_outcomes(
    const DenseHermitian4& rho, double theta, double phi) {
  validate_state(rho);
  std::array<MeasurementOutcome, 2> out;
  for (int k = 0; k < 2; ++k) {
    const auto pi = lift_to_b(Projector{theta, phi, k}.matrix());
    const auto projected = pi * rho * pi.adjoint();
    auto& o = out[static_cast<std::size_t>(k)];
    o.probability = projected.trace().real();
    if (o.probability < kDegenerateProbability) {
      o.degenerate = true;
      continue;
    }
    o.rho_a = Complex{1.0 / o.probability} * reduced_a(projected);
  }
  return out;
}

double conditional_average(const std::array<MeasurementOutcome, 2>& outcomes) {
  double s = 0.0;
  for (const auto& o : outcomes)
    if (!o.degenerate) s += o.probability * von_neumann_entropy<2>(o.rho_a);
  return s;
}

template <std::size_t N>
EigenSystem<N> eigh(const CMatrix<N>& h) {
  const double scale = std::max(h.max_abs(), 1e-300);
  if (h.hermiticity_defect() > 1e-12 * std::max(scale, 1.0))
    throw Error(ErrorCode::NotHermitian, "eigh: matrix is not Hermitian");

  CMatrix<N> a = h;
  CMatrix<N> vec = CMatrix<N>::identity();
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
    if (off <= 1e-34 * scale * scale) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        // Phase e with a(p,q) = g e; the unitary diag(1, conj e) on q makes
        // the (p, q) block real, then a real rotation annihilates it.
        const Complex e = a(p, q) / g;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // R = U G with U = diag(.., 1 at p, conj(e) at q, ..),
        // G = [[c, s], [-s, c]] on (p, q).
        CMatrix<N> r = CMatrix<N>::identity();
        r(p, p) = c;
        r(p, q) = s;
        r(q, p) = -s * std::conj(e);
        r(q, q) = c * std::conj(e);
        a = r.adjoint() * a * r;
        vec = vec * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  EigenSystem<N> out{};
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, i) = vec(r, order[i]);
  }
  const auto gram = out.vectors.adjoint() * out.vectors;
  out.orthonormal = (gram - CMatrix<N>::identity()).max_abs() < 1e-12;
  return out;
}

template EigenSystem<2> eigh<2>(const CMatrix<2>&);
template EigenSystem<4> eigh<4>(const CMatrix<4>&);

template <std::size_t N>
double von_neumann_entropy(const CMatrix<N>& rho) {
  const auto eig = eigh<N>(rho);
  return shannon_entropy(eig.values);
}

template double von_neumann_entropy<2>(const CMatrix<2>&);
template double von_neumann_entropy<4>(const CMatrix<4>&);

double objective(const XState& s, Objective objective, double theta,
                 double phi) {
  const auto rho = assemble_state(s);
  if (objective == Objective::PostEntropy)
    return von_neumann_entropy<4>(post_measure(rho, theta, phi));
  return conditional_average(conditional_outcomes(rho, theta, phi));
}

OracleMinimum brute_force_minimize(const XState& s, Objective objective_kind,
                                   int grid_n) {
  if (grid_n < 91)
    throw Error(ErrorCode::InvalidArgument, "brute force grid needs >= 91 points");
  const auto n = static_cast<std::size_t>(grid_n);
  const auto grid = linspace(0.0, kHalfPi, n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = objective(s, objective_kind, grid[i]);

  OracleMinimum best{grid[0], values[0]};
  auto consider = [&](double theta, double value) {
    if (value < best.value - 1e-12 ||
        (std::fabs(value - best.value) <= 1e-12 && theta < best.theta))
      best = {theta, value};
  };
  if (values[n - 1] <= values[n - 2]) consider(grid[n - 1], values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(values[i] <= values[i - 1] && values[i] <= values[i + 1])) continue;
    if (values[i] == values[i - 1] && values[i] == values[i + 1]) continue;
    const auto m = brent_minimize(
        [&](double t) { return objective(s, objective_kind, t); }, grid[i - 1],
        grid[i + 1], 1e-10);
    const auto refined = m.value <= values[i] ? m : ScalarMinimum{grid[i], values[i]};
    consider(refined.x, refined.value);
  }
  return best;
}

OracleCorrelation brute_force_correlation(const XState& s, Objective objective_kind,
                                          int grid_n) {
  const auto rho = assemble_state(s);
  const auto minimum = brute_force_minimize(s, objective_kind, grid_n);
  double offset = von_neumann_entropy<4>(rho);
  if (objective_kind == Objective::ConditionalEntropy)
    offset -= von_neumann_entropy<2>(reduced_b(rho));
  return {minimum.value - offset, minimum.theta};
}

}  // namespace xcorr::oracle
