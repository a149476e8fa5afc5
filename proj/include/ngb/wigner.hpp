#pragma once

#include <utility>
#include <vector>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"

namespace ngb {

/// Highest Fock level the evaluator accepts. The scaled Laguerre recurrence
/// keeps intermediates O(1) for any radius; accuracy is documented for
/// n <= 200, r <= 8 (the bound families in scope stay below n ~ 50).
inline constexpr int kMaxWignerLevel = 200;

/// Cartesian phase-space grid, trapezoid-quadrature friendly.
struct GridSpec {
  double x_min = -6.0, x_max = 6.0;
  double p_min = -6.0, p_max = 6.0;
  int x_steps = 201, p_steps = 201;

  double x(int i) const {
    return x_min + (x_max - x_min) * i / (x_steps - 1);
  }
  double p(int j) const {
    return p_min + (p_max - p_min) * j / (p_steps - 1);
  }
  double dx() const { return (x_max - x_min) / (x_steps - 1); }
  double dp() const { return (p_max - p_min) / (p_steps - 1); }

  bool operator==(const GridSpec& o) const {
    return x_min == o.x_min && x_max == o.x_max && p_min == o.p_min &&
           p_max == o.p_max && x_steps == o.x_steps && p_steps == o.p_steps;
  }
};

struct PolarGridSpec {
  double r_max = 6.0;
  int r_steps = 400;
  int phi_steps = 64;
};

struct WignerGrid {
  GridSpec spec;
  RealMatrix values;  // values(i, j) = W(x_i, p_j)
  double min_value = 0.0;
  Vector2 min_location = Vector2::Zero();
};

/// Grid sized so the state's classically occupied region (r ~ sqrt(2<n>+1))
/// is covered with the default resolution; returns the default 201x201
/// [-6,6]^2 grid for states with <n> <~ 15.
GridSpec suggest_grid(const FockDensityMatrix& rho);

/// W(x, p) for a truncated Fock-basis state, via associated Laguerre
/// polynomials: the |m><n| term (m <= n) carries
///   ((-1)^m/pi) sqrt(m!/n!) (sqrt2 (x+ip))^{n-m} L_m^{n-m}(2r^2) e^{-r^2}.
/// Throws UnsupportedRange when dim-1 > kMaxWignerLevel.
double wigner_point(const FockDensityMatrix& rho, double x, double p);

/// Dense evaluation over the grid (parallel over rows).
RealMatrix wigner_eval(const FockDensityMatrix& rho, const GridSpec& grid);

/// Same state evaluated on a polar grid; values(i, j) = W at radius r_i,
/// angle phi_j.
RealMatrix wigner_eval_polar(const FockDensityMatrix& rho,
                             const PolarGridSpec& grid);

/// W_G(r) = (mu_G/pi) exp(-r^2 mu_G), the symmetric thermal reference.
double thermal_wigner(double mu_g, double r);

/// General Gaussian Wigner function with mean d and covariance gamma/2.
/// Reduces to thermal_wigner for d = 0, gamma = diag(1/mu_G, 1/mu_G).
double gaussian_wigner(const Vector2& d, const Matrix2& gamma, double x,
                       double p);

/// Trapezoid integral of grid values over the full rectangle.
double integrate(const RealMatrix& values, const GridSpec& grid);

/// 2*pi * integral(a * b); both value grids must share the same spec.
double overlap_quadrature(const RealMatrix& a, const GridSpec& spec_a,
                          const RealMatrix& b, const GridSpec& spec_b);

struct WignerMin {
  double value = 0.0;
  Vector2 location = Vector2::Zero();
  bool nonnegative = false;  // value >= -tol::wigner_positive after refinement
};

/// Grid minimum refined by coordinate-wise golden-section line searches.
WignerMin min_wigner(const FockDensityMatrix& rho, const GridSpec& grid);

WignerGrid wigner_grid(const FockDensityMatrix& rho, const GridSpec& grid);

}  // namespace ngb
