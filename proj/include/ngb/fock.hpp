#pragma once

#include "ngb/common.hpp"

namespace ngb {

// Quadrature convention (fixed, hbar = 1):
//   x = (a + a^dag)/sqrt(2),  p = (a - a^dag)/(i sqrt(2)).
// The vacuum has covariance gamma = diag(1, 1), so the Schroedinger-Robertson
// determinant bound is saturated at 1, and Tr(rho (2n+1)) = 1/mu_G for
// phase-symmetric states.

struct ValidationReport {
  double hermiticity_defect = 0.0;  // max |rho_mn - conj(rho_nm)|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the hermitian part
  double tail_mass = 0.0;           // rho_{d-1,d-1} + rho_{d-2,d-2}

  bool hermitian() const { return hermiticity_defect <= tol::hermitian; }
  bool unit_trace() const { return trace_defect <= tol::trace; }
  bool positive() const { return min_eigenvalue >= -tol::psd; }
  bool converged(double tail_tol = tol::tail_mass) const {
    return tail_mass < tail_tol;
  }
  bool pass() const {
    return hermitian() && unit_trace() && positive() && converged();
  }
};

/// Single-mode density matrix in the truncated number basis |0>..|dim-1>.
/// Immutable after construction; trace is normalized to 1 on construction.
class FockDensityMatrix {
 public:
  /// Default-constructs the vacuum |0><0|.
  FockDensityMatrix() : elements_(ComplexMatrix::Ones(1, 1)) {}

  /// Diagonal mixture of number states. Weights are normalized to sum 1;
  /// entries below -tol::psd or an all-zero vector are rejected.
  static FockDensityMatrix from_diagonal(const RealVector& weights);

  /// Rank-1 projector |psi><psi| with psi normalized to unit norm.
  static FockDensityMatrix from_pure(const ComplexVector& amplitudes);

  /// Wraps a raw matrix, normalizing the trace. Hermiticity and positivity
  /// are *not* enforced here; use validate() — the oracle deliberately
  /// studies near-boundary matrices.
  static FockDensityMatrix from_matrix(ComplexMatrix elements);

  int dim() const { return static_cast<int>(elements_.rows()); }
  const ComplexMatrix& elements() const { return elements_; }
  Complex operator()(int m, int n) const { return elements_(m, n); }

  /// Real diagonal (Fock populations).
  RealVector diagonal() const { return elements_.diagonal().real(); }

 private:
  explicit FockDensityMatrix(ComplexMatrix elements)
      : elements_(std::move(elements)) {}
  ComplexMatrix elements_;

  friend FockDensityMatrix phase_average(const FockDensityMatrix&);
};

struct Moments {
  Vector2 d;            // <x>, <p>
  double xx = 0.0;      // <x^2>
  double pp = 0.0;      // <p^2>
  double xp = 0.0;      // <xp + px>/2
  double mean_n = 0.0;  // <n>
};

ValidationReport validate(const FockDensityMatrix& rho);

/// Tr(rho^2) = sum |rho_mn|^2.
double purity(const FockDensityMatrix& rho);

double tail_mass(const FockDensityMatrix& rho);

/// First and second quadrature moments from the ladder-operator bands.
/// Throws CutoffTooSmall when the tail mass exceeds tail_tol.
Moments moments(const FockDensityMatrix& rho, double tail_tol = tol::tail_mass);

/// Covariance matrix, anticommutator convention:
///   gamma_ij = Tr({r_i - d_i, r_j - d_j} rho) = 2 x centered second moments.
Matrix2 covariance(const FockDensityMatrix& rho,
                   double tail_tol = tol::tail_mass);

/// Diagonal extraction: the Fock-basis realization of phase averaging the
/// Wigner function over the angle. Exact fixed point for diagonal states;
/// preserves trace, <n> and every diagonal observable; never raises purity.
FockDensityMatrix phase_average(const FockDensityMatrix& rho);

}  // namespace ngb
