#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ngb/metrics.hpp"
#include "ngb/region1.hpp"
#include "ngb/rng.hpp"
#include "test_oracles.hpp"

using namespace ngb;

TEST_CASE("reference_purity") {
  CHECK(reference_purity(Matrix2::Identity()) == doctest::Approx(1.0));
  Matrix2 g3 = 3.0 * Matrix2::Identity();
  CHECK(reference_purity(g3) == doctest::Approx(1.0 / 3.0));
  Matrix2 squeezed;
  squeezed << 2.0, 0.0, 0.0, 0.5;
  CHECK(reference_purity(squeezed) == doctest::Approx(1.0));
  Matrix2 singular = Matrix2::Zero();
  CHECK_THROWS_AS(reference_purity(singular), InvalidInput);
}

TEST_CASE("thermal_weights against the direct formula") {
  for (double mu_g : {0.2, 0.5, 0.77, 1.0}) {
    const RealVector t = thermal_weights(mu_g, 24);
    const auto ref = testing::thermal_reference(mu_g, 24);
    for (int n = 0; n < 24; ++n)
      CHECK(t(n) == doctest::Approx(double(ref[n])).epsilon(1e-13));
  }
}

TEST_CASE("thermal_overlap examples") {
  RealVector vac = RealVector::Unit(2, 0);
  CHECK(thermal_overlap(vac, 1.0) == doctest::Approx(1.0));

  RealVector one = RealVector::Unit(3, 1);
  CHECK(thermal_overlap(one, 1.0 / 3.0) == doctest::Approx(0.25));

  RealVector half(2);
  half << 0.5, 0.5;
  const RealVector t = thermal_weights(0.5, 2);
  CHECK(thermal_overlap(half, 0.5) ==
        doctest::Approx(0.5 * (t(0) + t(1))));

  CHECK_THROWS_AS(thermal_overlap(half, 0.0), InvalidInput);
  CHECK_THROWS_AS(thermal_overlap(half, 1.5), InvalidInput);
}

TEST_CASE("gaussian_overlap_numeric examples") {
  const auto vac = FockDensityMatrix::from_diagonal(RealVector::Unit(3, 0));
  CHECK(gaussian_overlap_numeric(vac) == doctest::Approx(1.0).epsilon(1e-6));

  const auto one = FockDensityMatrix::from_diagonal(RealVector::Unit(4, 1));
  CHECK(gaussian_overlap_numeric(one) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("non_gaussianity") {
  CHECK(non_gaussianity(0.7, 0.7, 0.7) == doctest::Approx(0.0));
  CHECK(non_gaussianity(1.0, 1.0 / 3.0, 0.25) ==
        doctest::Approx(5.0 / 12.0));
  CHECK(non_gaussianity(0.5, 0.5, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("summarize examples") {
  const auto vac = FockDensityMatrix::from_diagonal(RealVector::Unit(3, 0));
  const StateSummary sv = summarize(vac);
  CHECK(sv.mu == doctest::Approx(1.0));
  CHECK(sv.mu_g == doctest::Approx(1.0));
  CHECK(sv.overlap == doctest::Approx(1.0));
  CHECK(sv.delta == doctest::Approx(0.0));
  CHECK(sv.symmetric);
  CHECK(sv.method == StateSummary::Method::kThermal);

  const auto one = FockDensityMatrix::from_diagonal(RealVector::Unit(4, 1));
  const StateSummary s1 = summarize(one);
  CHECK(s1.mu == doctest::Approx(1.0));
  CHECK(s1.mu_g == doctest::Approx(1.0 / 3.0));
  CHECK(s1.overlap == doctest::Approx(0.25));
  CHECK(s1.delta == doctest::Approx(5.0 / 12.0));

  const StateSummary st = summarize(thermal_state(0.5, 64));
  CHECK(st.mu == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(st.mu_g == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(st.overlap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(st.delta) < 1e-9);
}

TEST_CASE("thermal and quadrature overlap agree on random diagonal states") {
  CounterRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 8 + static_cast<int>(rng.next_u64() % 25);  // up to 32
    RealVector w = RealVector::Zero(dim);
    const double zeta = rng.uniform(0.3, 0.95);
    double damp = 1.0;
    for (int n = 0; n + 2 < dim; ++n, damp *= zeta)
      w(n) = -std::log(1.0 - rng.uniform()) * damp;
    const auto rho = FockDensityMatrix::from_diagonal(w);
    const double mu_g = reference_purity(covariance(rho));
    const double closed = thermal_overlap(rho.diagonal(), mu_g);
    const double quad = gaussian_overlap_numeric(rho);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("two delta routes agree on symmetric states") {
  CounterRng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    RealVector w = RealVector::Zero(16);
    const double zeta = rng.uniform(0.4, 0.9);
    double damp = 1.0;
    for (int n = 0; n + 2 < 16; ++n, damp *= zeta)
      w(n) = rng.uniform() * damp;
    const auto rho = FockDensityMatrix::from_diagonal(w);
    const StateSummary s = summarize(rho);
    CHECK(non_gaussianity_direct(rho) ==
          doctest::Approx(s.delta).epsilon(1e-8));
  }
}

TEST_CASE("lemma end to end: phase averaging preserves mu_G and T") {
  CounterRng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix m = ComplexMatrix::Zero(15, 15);
    const double zeta = rng.uniform(0.5, 0.85);
    for (int r = 0; r < 2; ++r) {
      ComplexVector v = ComplexVector::Zero(15);
      const int residue = static_cast<int>(rng.next_u64() % 3);
      for (int n = residue; n + 2 < 15; n += 3)
        v(n) = std::pow(zeta, n) * Complex(rng.normal(), rng.normal());
      v.normalize();
      m += 0.5 * (v * v.adjoint());
    }
    const auto rho = FockDensityMatrix::from_matrix(std::move(m));
    const StateSummary before = summarize(rho);
    const StateSummary after = summarize(phase_average(rho));
    CHECK(after.mu_g == doctest::Approx(before.mu_g).epsilon(1e-12));
    CHECK(after.overlap == doctest::Approx(before.overlap).epsilon(1e-12));
    CHECK(after.mu <= before.mu + 1e-12);
  }
}

TEST_CASE("region1 closed forms reproduced through summarize") {
  for (double mu_g : {0.25, 0.4, 0.6}) {
    for (double x2 : {2.4, 3.7, 5.0}) {
      try {
        const Region1Solution sol = region1_exact(mu_g, x2, 0);
        const StateSummary s = summarize(region1_state(mu_g, x2, 0));
        CHECK(s.mu == doctest::Approx(sol.mu).epsilon(1e-8));
        CHECK(s.overlap == doctest::Approx(sol.overlap).epsilon(1e-8));
        CHECK(s.mu_g == doctest::Approx(mu_g).epsilon(1e-8));
      } catch (const InfeasibleRegion&) {
        // parameter combinations outside the feasible window are fine here
      }
    }
  }
}
