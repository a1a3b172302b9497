#pragma once

// Brute-force ground truth: explicit density matrices, projective
// measurements V(theta, phi)|k><k|V^dagger on qubit B, and a cyclic Jacobi
// eigensolver. Nothing in here uses the closed forms of entropies.hpp.

#include <array>
#include <complex>
#include <cstddef>

#include "xcorr/entropies.hpp"
#include "xcorr/model.hpp"

namespace xcorr::oracle {

using Complex = std::complex<double>;

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
class CMatrix {
 public:
  static constexpr std::size_t kDim = N;

  CMatrix() { data_.fill(Complex{}); }

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * N + j];
  }

  CMatrix adjoint() const {
    CMatrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// max |m_ij - conj(m_ji)|
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  double max_abs() const {
    double worst = 0.0;
    for (const auto& z : data_) worst = std::max(worst, std::abs(z));
    return worst;
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex xik = x(i, k);
        if (xik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend CMatrix operator+(CMatrix x, const CMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.data_[i] += y.data_[i];
    return x;
  }

  friend CMatrix operator-(CMatrix x, const CMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.data_[i] -= y.data_[i];
    return x;
  }

  friend CMatrix operator*(Complex s, CMatrix x) {
    for (auto& z : x.data_) z *= s;
    return x;
  }

 private:
  std::array<Complex, N * N> data_;
};

using DenseHermitian2 = CMatrix<2>;
using DenseHermitian4 = CMatrix<4>;

/// Two-qubit basis ordering |A B> -> 2*A + B: |00>, |01>, |10>, |11>.
DenseHermitian4 assemble_state(const XState& s);

/// I (x) m acting on qubit B.
DenseHermitian4 lift_to_b(const DenseHermitian2& m);

/// Rotation V(theta, phi) in SU(2).
DenseHermitian2 rotation(double theta, double phi);

struct Projector {
  double theta;
  double phi;
  int k;  // 0 or 1

  DenseHermitian2 matrix() const;
};

/// Throws InvalidState unless rho is Hermitian (1e-14), has unit trace
/// (1e-12) and no eigenvalue below -1e-12.
void validate_state(const DenseHermitian4& rho);

/// Nonselective measurement of qubit B: sum_k (I x Pi_k) rho (I x Pi_k).
DenseHermitian4 post_measure(const DenseHermitian4& rho, double theta,
                             double phi);

/// Reduced state of qubit B (trace over A).
DenseHermitian2 reduced_b(const DenseHermitian4& rho);
/// Reduced state of qubit A (trace over B).
DenseHermitian2 reduced_a(const DenseHermitian4& rho);

struct MeasurementOutcome {
  double probability = 0.0;
  DenseHermitian2 rho_a;  // conditional state of A; zero when degenerate
  bool degenerate = false;

  /// Throws DegenerateOutcome when probability < 1e-14.
  const DenseHermitian2& conditional_state() const;
};

inline constexpr double kDegenerateProbability = 1e-14;

std::array<MeasurementOutcome, 2> conditional_outcomes(
    const DenseHermitian4& rho, double theta, double phi);

/// sum_k p_k S(rho_A|k); degenerate outcomes contribute zero.
double conditional_average(const std::array<MeasurementOutcome, 2>& outcomes);

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values;  // descending
  CMatrix<N> vectors;            // columns
  bool orthonormal;
};

/// Cyclic Jacobi rotations; throws NotHermitian.
template <std::size_t N>
EigenSystem<N> eigh(const CMatrix<N>& h);

extern template EigenSystem<2> eigh<2>(const CMatrix<2>&);
extern template EigenSystem<4> eigh<4>(const CMatrix<4>&);

inline EigenSystem<4> eig4(const DenseHermitian4& h) { return eigh<4>(h); }

template <std::size_t N>
double von_neumann_entropy(const CMatrix<N>& rho);

extern template double von_neumann_entropy<2>(const CMatrix<2>&);
extern template double von_neumann_entropy<4>(const CMatrix<4>&);

/// Objective evaluated from matrices: S(rho-bar) for PostEntropy and the
/// outcome-weighted sum_k p_k S(rho_A|k) for ConditionalEntropy.
double objective(const XState& s, Objective objective, double theta,
                 double phi = 0.0);

struct OracleMinimum {
  double theta;
  double value;
};

/// Global minimum over theta in [0, pi/2] (phi = 0): dense scan with grid_n
/// points, then Brent refinement around every interior local minimum of the
/// scan. Endpoint minima are kept unrefined; ties go to the smaller theta.
OracleMinimum brute_force_minimize(const XState& s, Objective objective,
                                   int grid_n = 181);

/// Optimised work deficit or discord computed without any closed form.
struct OracleCorrelation {
  double value;
  double theta;
};

OracleCorrelation brute_force_correlation(const XState& s, Objective objective,
                                          int grid_n = 181);

}  // namespace xcorr::oracle
