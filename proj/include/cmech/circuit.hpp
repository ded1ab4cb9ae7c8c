#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "cmech/linalg.hpp"
#include "cmech/processes.hpp"

namespace cmech::circuit {

using Complex = std::complex<double>;

/// Fixed-size complex matrix, row-major. Two-qubit matrices index the basis
/// as 2 * observer + environment (observer is the first tensor factor).
template <std::size_t D>
class CMatrix {
 public:
  static constexpr std::size_t dim = D;

  constexpr CMatrix() = default;

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < D; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * D + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * D + j]; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < D; ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix adjoint() const {
    CMatrix a;
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) a(i, j) = std::conj((*this)(j, i));
    return a;
  }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c;
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t k = 0; k < D; ++k)
        for (std::size_t j = 0; j < D; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix c;
    for (std::size_t i = 0; i < D * D; ++i) c.data_[i] = a.data_[i] + b.data_[i];
    return c;
  }
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix c;
    for (std::size_t i = 0; i < D * D; ++i) c.data_[i] = a.data_[i] - b.data_[i];
    return c;
  }
  friend CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix c;
    for (std::size_t i = 0; i < D * D; ++i) c.data_[i] = s * a.data_[i];
    return c;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
  }

 private:
  std::array<Complex, D * D> data_{};
};

using Qubit = CMatrix<2>;
using TwoQubit = CMatrix<4>;

/// observer (x) environment.
TwoQubit kron(const Qubit& observer, const Qubit& environment);

/// Largest entry of |U^dagger U - I|.
template <std::size_t D>
double unitarity_error(const CMatrix<D>& u) {
  return (u.adjoint() * u - CMatrix<D>::identity()).max_abs();
}

template <std::size_t D>
double hermiticity_error(const CMatrix<D>& m) {
  return (m - m.adjoint()).max_abs();
}

/// Smallest eigenvalue of a Hermitian matrix, via the real symmetric embedding
/// [[Re, -Im], [Im, Re]] whose spectrum is that of `m` with each value doubled.
template <std::size_t D>
double min_eigenvalue(const CMatrix<D>& m) {
  Matrix embed(2 * D, 2 * D);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      // Symmetrize so round-off asymmetry never trips the eigensolver.
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      embed(i, j) = embed(D + i, D + j) = z.real();
      embed(D + i, j) = z.imag();
      embed(i, D + j) = -z.imag();
    }
  return symmetric_eigenvalues(embed).back();
}

/// Hermitian, unit trace and positive semidefinite, each within `tol`.
template <std::size_t D>
bool is_density(const CMatrix<D>& m, double tol) {
  if (hermiticity_error(m) > tol) return false;
  if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
  return min_eigenvalue(m) >= -tol;
}

/// (1 - lambda)|0><0| + (lambda/2) I. Throws OutOfRange outside [0,1].
Qubit env_qubit(double lambda);

/// 1 (x) |0><0|_e + X_kappa (x) |1><1|_e with X_kappa = cos(kappa) I + i sin(kappa) X.
/// Throws OutOfRange outside [0, pi/2].
TwoQubit cx_kappa_unitary(double kappa);

/// Exchanges observer and environment.
TwoQubit swap_unitary();

/// g U_S rho U_S^dagger + (1 - g) rho. Throws InvalidDensity for a bad input.
TwoQubit pswap_channel(const TwoQubit& rho, double g);

/// Traces out the environment qubit. Throws InvalidDensity for a bad input.
Qubit partial_trace_env(const TwoQubit& rho);

/// Observer initialized in |last_outcome><last_outcome| before the next probe.
struct ObserverStep {
  int last_outcome = 0;
  CloudParams params;
};

/// Every intermediate density matrix of one probe round.
struct StepStages {
  TwoQubit input;
  TwoQubit after_interaction;
  TwoQubit after_swap;
  Qubit observer;
};

StepStages simulate_step(const ObserverStep& step);

/// Probability that the observer now measures 1 - last_outcome.
double step_flip_probability(const ObserverStep& step);

}  // namespace cmech::circuit
