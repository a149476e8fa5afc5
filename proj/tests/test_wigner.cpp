#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ngb/metrics.hpp"
#include "ngb/rng.hpp"
#include "ngb/wigner.hpp"
#include "test_oracles.hpp"

using namespace ngb;

namespace {

FockDensityMatrix number_state(int n) {
  return FockDensityMatrix::from_diagonal(RealVector::Unit(n + 3, n));
}

}  // namespace

TEST_CASE("wigner point values") {
  CHECK(wigner_point(number_state(0), 0.0, 0.0) ==
        doctest::Approx(1.0 / M_PI));
  CHECK(wigner_point(number_state(1), 0.0, 0.0) ==
        doctest::Approx(-1.0 / M_PI));
}

TEST_CASE("general evaluator matches the two-level Laguerre formula") {
  // 5x5 grid, |psi> = (|0> + |1>)/sqrt(2) and the n = 1 variant
  for (int n : {0, 1}) {
    const double a = 0.5;
    ComplexVector psi = ComplexVector::Zero(n + 4);
    psi(n) = std::sqrt(a);
    psi(n + 1) = std::sqrt(1 - a);
    const auto rho = FockDensityMatrix::from_pure(psi);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double x = -2.0 + i, p = -2.0 + j;
        const double ref = testing::wibeta_reference(
            n, std::sqrt(a), std::sqrt(1 - a), x, p);
        worst = std::max(worst, std::abs(wigner_point(rho, x, p) - ref));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("general evaluator matches the reference sum on random states") {
  CounterRng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    for (int r = 0; r < 3; ++r) {
      ComplexVector v(9);
      for (int n = 0; n < 9; ++n)
        v(n) = std::pow(0.8, n) * Complex(rng.normal(), rng.normal());
      v.normalize();
      m += (1.0 / 3.0) * (v * v.adjoint());
    }
    const auto rho = FockDensityMatrix::from_matrix(std::move(m));
    for (double x : {-1.7, 0.0, 0.9, 2.3}) {
      for (double p : {-2.1, -0.4, 0.0, 1.6}) {
        CHECK(wigner_point(rho, x, p) ==
              doctest::Approx(testing::wigner_reference(rho, x, p))
                  .epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("thermal_wigner") {
  CHECK(thermal_wigner(1.0, 0.0) == doctest::Approx(1.0 / M_PI));
  CHECK(thermal_wigner(0.5, 0.0) == doctest::Approx(0.5 / M_PI));
  // 2 pi int W r dr = 1
  double integral = 0.0;
  const int steps = 4000;
  const double r_max = 10.0;
  for (int i = 0; i < steps; ++i) {
    const double r = r_max * (i + 0.5) / steps;
    integral += thermal_wigner(0.37, r) * r * (r_max / steps);
  }
  CHECK(2.0 * M_PI * integral == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(thermal_wigner(0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(thermal_wigner(0.5, -1.0), InvalidInput);
}

TEST_CASE("gaussian_wigner") {
  // reduction to the thermal form
  CHECK(gaussian_wigner(Vector2::Zero(), 2.0 * Matrix2::Identity(), 0.0, 0.0) ==
        doctest::Approx(thermal_wigner(0.5, 0.0)));
  // peak value of a displaced vacuum
  CHECK(gaussian_wigner(Vector2(1.0, 0.0), Matrix2::Identity(), 1.0, 0.0) ==
        doctest::Approx(1.0 / M_PI));
  // symmetric about the mean
  const Vector2 d(0.7, -0.3);
  Matrix2 g;
  g << 1.8, 0.2, 0.2, 1.1;
  CHECK(gaussian_wigner(d, g, d[0] + 0.5, d[1] - 0.4) ==
        doctest::Approx(gaussian_wigner(d, g, d[0] - 0.5, d[1] + 0.4)));
  CHECK_THROWS_AS(gaussian_wigner(d, Matrix2::Zero(), 0.0, 0.0), InvalidInput);
}

TEST_CASE("diagonal states are phase independent") {
  RealVector w = RealVector::Zero(8);
  w << 0.3, 0.25, 0.2, 0.12, 0.08, 0.05, 0.0, 0.0;
  const auto rho = FockDensityMatrix::from_diagonal(w);
  PolarGridSpec polar;
  polar.r_steps = 40;
  polar.phi_steps = 32;
  const RealMatrix values = wigner_eval_polar(rho, polar);
  for (int i = 0; i < polar.r_steps; ++i) {
    const double spread =
        values.row(i).maxCoeff() - values.row(i).minCoeff();
    CHECK(spread < 1e-10);
  }
}

TEST_CASE("normalization and purity through quadrature") {
  CounterRng rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 6 + static_cast<int>(rng.next_u64() % 10);
    ComplexVector psi = ComplexVector::Zero(dim);
    for (int n = 0; n + 2 < dim; ++n)
      psi(n) = std::pow(0.75, n) * Complex(rng.normal(), rng.normal());
    const auto rho = FockDensityMatrix::from_pure(psi);
    const GridSpec grid = suggest_grid(rho);
    const RealMatrix w = wigner_eval(rho, grid);
    CHECK(2.0 * M_PI * integrate(w, grid) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-6));
    CHECK(overlap_quadrature(w, grid, w, grid) ==
          doctest::Approx(purity(rho)).epsilon(1e-6));
  }
}

TEST_CASE("overlap_quadrature examples") {
  const auto vac = number_state(0);
  const GridSpec grid;
  const RealMatrix wv = wigner_eval(vac, grid);
  CHECK(overlap_quadrature(wv, grid, wv, grid) ==
        doctest::Approx(1.0).epsilon(1e-6));

  const auto one = number_state(1);
  const RealMatrix w1 = wigner_eval(one, grid);
  RealMatrix wt(grid.x_steps, grid.p_steps);
  for (int i = 0; i < grid.x_steps; ++i)
    for (int j = 0; j < grid.p_steps; ++j)
      wt(i, j) = thermal_wigner(
          1.0 / 3.0, std::hypot(grid.x(i), grid.p(j)));
  CHECK(overlap_quadrature(w1, grid, wt, grid) ==
        doctest::Approx(0.25).epsilon(1e-6));
  // symmetry of the bilinear form
  CHECK(overlap_quadrature(w1, grid, wt, grid) ==
        doctest::Approx(overlap_quadrature(wt, grid, w1, grid)));

  GridSpec other;
  other.x_steps = 101;
  CHECK_THROWS_AS(overlap_quadrature(w1, grid, wt, other), GridMismatch);
}

TEST_CASE("min_wigner classification") {
  const auto thermal = thermal_state(0.5, 32);
  const WignerMin mt = min_wigner(thermal, GridSpec{});
  CHECK(mt.nonnegative);
  CHECK(mt.value >= -1e-12);

  const WignerMin m1 = min_wigner(number_state(1), GridSpec{});
  CHECK_FALSE(m1.nonnegative);
  CHECK(m1.value == doctest::Approx(-1.0 / M_PI).epsilon(1e-9));
  CHECK(m1.location.norm() < 1e-6);

  RealVector mix(4);
  mix << 0.5, 0.5, 0.0, 0.0;
  const auto half = FockDensityMatrix::from_diagonal(mix);
  const WignerMin mh = min_wigner(half, GridSpec{});
  CHECK(mh.value == doctest::Approx(0.0).epsilon(1e-9));
  // dense radial oracle: the refined minimum can't be beaten
  CHECK(testing::radial_min_reference(half, 6.0, 4000) >= mh.value - 1e-9);
}

TEST_CASE("stability ceiling is enforced") {
  RealVector w = RealVector::Zero(kMaxWignerLevel + 3);
  w(0) = 1.0;
  const auto rho = FockDensityMatrix::from_diagonal(w);
  CHECK_THROWS_AS(wigner_point(rho, 0.0, 0.0), UnsupportedRange);
}

TEST_CASE("high level evaluation stays finite and accurate") {
  // |60> is far beyond naive factorial territory
  RealVector w = RealVector::Zero(63);
  w(60) = 1.0;
  const auto rho = FockDensityMatrix::from_diagonal(w);
  const double at_origin = wigner_point(rho, 0.0, 0.0);
  CHECK(at_origin == doctest::Approx(1.0 / M_PI));  // (-1)^60 L_60(0)/pi
  const double far = wigner_point(rho, 7.5, 3.0);
  CHECK(std::isfinite(far));
}
