#pragma once

#include <string>
#include <vector>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"

namespace ngb {

enum class Region { kI, kII };

enum class Family {
  kAppendixA,
  kRegion1Exact,
  kRegion1Approx,
  kRank2,
  kPsiA,
  kPsiB,
  kBeta,
  kRho1,
  kRho2,
  kRho3,
};

const char* to_string(Region r);
const char* to_string(Family f);

/// One sampled point of the bound surface.
struct BoundPoint {
  double mu_g = 0.0;
  double mu = 0.0;
  double overlap = 0.0;
  double delta = 0.0;
  Region region = Region::kI;
  Family family = Family::kRegion1Exact;
  int rank = 0;
  int n = 0;          // n_min for region-I families, level index otherwise
  double param1 = 0;  // x2 / p / alpha / a, per family
  double param2 = 0;  // amp / |b|, per family
};

/// Minimum-purity extremal weights for given (mu_G, x2, n_min):
/// w_n = A1 + A2 n + A3 mu_G (1-mu_G)^n / (1+mu_G)^(n+1), n in [n_min, n_max],
/// n_max = floor(x2), with the three Lagrange conditions pinned by a 3x3
/// linear solve.
struct Region1Solution {
  double mu_g = 0.0;
  double x2 = 0.0;
  int n_min = 0;
  int n_max = 0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double mu = 0.0;       // closed-form purity of the extremal state
  double overlap = 0.0;  // closed-form Tr(rho rho_G)
  RealVector weights;    // w_{n_min}..w_{n_max}
};

/// Parametric purity-bounded curve (the mu_G--mu floor), parameter y >= 1:
///   mu_G = 3(N-2y)/(N(5+4N)-6(1+N)y), mu = 2(N+2N^2-6Ny+6y^2)/(3(1+N)(N-2y)^2)
/// with N = floor(y). Returns (mu_G, mu).
std::pair<double, double> purity_bound_curve(double y);

/// Piecewise closed form of the same floor: 8 mu_G/(9 - mu_G^2) for
/// mu_G <= 3/5 and (1 - 4 mu_G + 5 mu_G^2)/(2 mu_G^2) above; continuous at
/// 3/5 where both give 5/9.
double purity_bound_approx(double mu_g);

/// Minimum physical purity at the given mu_G, from the exact parametric
/// curve (bracketing bisection over y).
double purity_floor(double mu_g);

/// Exact solve. Throws DegenerateParameters when the 3x3 system determinant
/// is below tol::singular_system and InfeasibleRegion when the resulting
/// weights violate f >= 0 on the window or the n_min pinning constraints
/// (f(n_min) > 0, f(n_min - 1) < 0 for n_min > 0). Setting
/// enforce_feasibility = false skips the weight checks and returns the bare
/// algebraic solution (the closed forms are identities in the coefficients).
Region1Solution region1_exact(double mu_g, double x2, int n_min,
                              bool enforce_feasibility = true);

/// Closed-form (mu, T) for n_min = 0 with floor(x2) = x2 (exact at integer
/// x2). Valid for 0 < mu_G < 1, x2 >= 2.
std::pair<double, double> region1_approx(double mu_g, double x2);

/// Mixture a|n><n| + (1-a)|n+1><n+1|: the upper edge of region I.
BoundPoint rank2_boundary(int n, double a);

/// The realized extremal state (diagonal, zero-padded for tail checks).
FockDensityMatrix region1_state(double mu_g, double x2, int n_min);

struct SweepSpec {
  double mu_g_min = 0.05, mu_g_max = 0.95;
  int mu_g_steps = 40;
  double x2_min = 2.0, x2_max = 12.0;
  int x2_steps = 40;
  int n_min_cap = 12;
};

struct SweepResult {
  std::vector<BoundPoint> points;
  int skipped = 0;  // infeasible (mu_G, x2) cells
};

/// Dense feasible sweep with automatic n_min selection (smallest feasible).
SweepResult region1_sweep(const SweepSpec& spec);

}  // namespace ngb
