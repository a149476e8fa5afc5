#pragma once

#include <optional>
#include <vector>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"
#include "ngb/region1.hpp"

namespace ngb {

/// A minimizer family member together with its realized matrix.
struct ExtremalState {
  Family family = Family::kPsiA;
  int n = 0;
  double param1 = 0.0;  // amplitude weight / p / alpha / a
  double param2 = 0.0;  // amp / |b|
  FockDensityMatrix state;
};

/// Real root of x^4 - 2(1+n)x^3 - 4x^2 - 6(1+n)x + 3 inside
/// [1/(2n+3), 1/(2n+1)], to 1e-12. The bracket endpoints are asserted to
/// change sign; a failure signals a transcription bug, never expected.
double quartic_root(int n);

/// Normalized two-level pure state psi = sqrt(amp)|j> + sqrt(1-amp)|k>
/// with amp pinned by the covariance constraint sum |psi|^2 (2n+1) = 1/mu_G.
/// Returns the overlap with the thermal reference, or nothing when the
/// constraint pushes amp outside [0, 1].
std::optional<double> pure_pair_overlap(int j, int k, double mu_g,
                                        double* amp = nullptr);

struct PureMinPoint {
  double mu_g = 0.0;
  double overlap = 0.0;
  ExtremalState minimizer;
};

/// Minimum Tr(rho rho_G) over pure states at the given mu_G: the family-wise
/// minimum over the gap-3 superpositions (psi_a / psi_b) and, on the first
/// two segments, the adjacent-level beta superpositions whose reference
/// Gaussian is displaced.
PureMinPoint pure_min_overlap(double mu_g);

struct BetaPoint {
  double mu_g = 0.0;
  double overlap = 0.0;
  FockDensityMatrix state;
};

/// psi_beta = sqrt(alpha)|n> + sqrt(1-alpha)|n+1>, n in {0, 1}; closed-form
/// (mu_G, T) with the radicands rewritten in positive form.
BetaPoint beta_family(int n, double alpha);

/// Solutions alpha of mu_G(alpha) = mu_g on [0, 1] for the beta family
/// (n = 0: unique, by the cube-root inversion; n = 1: up to two branches).
std::vector<double> beta_alphas(int n, double mu_g);

struct FamilyPoint {
  double mu = 0.0;
  double mu_g = 0.0;
  double overlap = 0.0;
  FockDensityMatrix state;
};

/// rho_i = p |psi><psi| + (1-p)|n+i><n+i| with psi = sqrt(amp)|n> +
/// sqrt(1-amp)|n+3>, i in {1, 2}. Thermal (non-displaced) reference.
FamilyPoint mixed_family(int n, int i, double p, double amp);

/// rho_3 = a|n><n| + (1-a)|n+1><n+1| + b|n><n+1| + h.c., n in {0, 1},
/// |b| <= sqrt(a(1-a)). Displaced, asymmetric reference Gaussian; closed-form
/// overlap.
FamilyPoint assy_family(int n, double a, Complex b);

struct SurfaceSpec {
  double mu_g_min = 0.05, mu_g_max = 0.95;
  int mu_g_steps = 46;
  double mu_min = 0.10, mu_max = 1.0;
  int mu_steps = 46;
};

struct BoundSurface {
  std::vector<BoundPoint> points;    // winners, row-major over the grid
  std::vector<BoundPoint> boundary;  // the rank-2 region-I/II border trace
  int cells = 0;
  int skipped = 0;     // unreachable cells (below the purity floor, etc.)
  int region_i = 0;
  int region_ii = 0;
};

/// Minimal overlap over all families at one (mu_G, mu) cell, or nothing when
/// the cell is unreachable. Families are all evaluated; no early pruning.
std::optional<BoundPoint> surface_min_overlap(double mu_g, double mu);

/// The stitched bound surface over a (mu_G, mu) grid.
BoundSurface total_bound(const SurfaceSpec& spec);

/// Reconstruct the realizing state of a bound point from its labels.
FockDensityMatrix realize(const BoundPoint& pt);

}  // namespace ngb
