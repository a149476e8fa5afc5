#pragma once

#include <optional>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"
#include "ngb/wigner.hpp"

namespace ngb {

/// The invariant fingerprint of a state in the {mu, mu_G, T, delta} space.
struct StateSummary {
  double mu = 0.0;       // Tr(rho^2)
  double mu_g = 0.0;     // 1/sqrt(det gamma)
  double overlap = 0.0;  // T = Tr(rho rho_G)
  double delta = 0.0;    // (mu_G + mu - 2T) / (2 mu)
  Vector2 d = Vector2::Zero();
  Matrix2 gamma = Matrix2::Zero();
  bool symmetric = false;  // |d|, |g11-g22|, |g12| all below tol::symmetric_class

  enum class Method { kThermal, kQuadrature };
  Method method = Method::kThermal;
};

/// mu_G = 1/sqrt(g11 g22 - g12^2). Values > 1 are allowed (unphysical test
/// inputs); a non-positive determinant is rejected.
double reference_purity(const Matrix2& gamma);

/// Thermal Fock weights t_n = 2 mu_G (1-mu_G)^n / (1+mu_G)^(n+1).
RealVector thermal_weights(double mu_g, int dim);

/// Thermal Fock-basis density matrix with the given reference purity.
FockDensityMatrix thermal_state(double mu_g, int dim);

/// T = sum_n w_n t_n for a diagonal (or phase-symmetric) state against the
/// thermal reference of purity mu_g.
double thermal_overlap(const RealVector& weights, double mu_g);

/// Tr(rho rho_G) through Wigner quadrature with the moment-matched general
/// Gaussian reference (handles displaced and squeezed references). The grid
/// defaults to suggest_grid(rho); resolution is certified by checking the
/// quadrature normalizations of both factors.
double gaussian_overlap_numeric(const FockDensityMatrix& rho,
                                std::optional<GridSpec> grid = std::nullopt);

/// delta = (mu_G + mu - 2 T) / (2 mu).
double non_gaussianity(double mu, double mu_g, double overlap);

/// Direct route Tr((rho - rho_G)^2) / (2 mu) with rho_G realized as the
/// Fock-basis thermal matrix; valid for the phase-symmetric class.
double non_gaussianity_direct(const FockDensityMatrix& rho);

/// Full fingerprint. Phase-symmetric states take the closed-form thermal
/// overlap; everything else goes through Wigner quadrature.
StateSummary summarize(const FockDensityMatrix& rho);

}  // namespace ngb
