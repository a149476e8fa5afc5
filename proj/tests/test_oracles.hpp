// Independent reference implementations used only by the test suite. These
// deliberately avoid the library's evaluation paths: std::assoc_laguerre and
// direct factorial sums instead of the scaled recurrences, long-double
// geometric sums instead of the closed forms.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ngb/fock.hpp"

namespace ngb::testing {

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Two-level adjacent superposition Wigner function, written out exactly as
/// the Laguerre-polynomial formula for psi_n|n> + psi_{n+1}|n+1>.
inline double wibeta_reference(int n, double psi_n, double psi_n1, double x,
                               double p) {
  const double z = 2.0 * (x * x + p * p);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double val =
      psi_n * psi_n * std::assoc_laguerre(n, 0, z) -
      psi_n1 * psi_n1 * std::assoc_laguerre(n + 1, 0, z) +
      (2.0 * std::sqrt(2.0) / std::sqrt(n + 1.0)) * (psi_n * psi_n1 * x) *
          std::assoc_laguerre(n, 1, z);
  return sign / M_PI * std::exp(-(x * x + p * p)) * val;
}

/// Direct term-by-term Wigner evaluation for small states (dim <= 16) via
/// std::assoc_laguerre and explicit factorials.
inline double wigner_reference(const FockDensityMatrix& rho, double x,
                               double p) {
  const int d = rho.dim();
  const double r2 = x * x + p * p;
  std::complex<double> w = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const std::complex<double> rmn = rho(m, n);
      if (std::abs(rmn) == 0.0) continue;
      const int lo = std::min(m, n), k = std::abs(n - m);
      const std::complex<double> phase =
          n >= m ? std::pow(std::complex<double>(x, p), k)
                 : std::pow(std::complex<double>(x, -p), k);
      w += rmn * (((lo % 2 == 0) ? 1.0 : -1.0) / M_PI) *
           std::sqrt(factorial(lo) / factorial(lo + k)) *
           std::pow(std::sqrt(2.0), k) * phase *
           std::assoc_laguerre(lo, k, 2.0 * r2) * std::exp(-r2);
    }
  }
  return w.real();
}

/// Thermal weights by direct evaluation of the printed formula in long
/// double.
inline std::vector<long double> thermal_reference(double mu_g, int dim) {
  std::vector<long double> t(dim);
  const long double m = mu_g;
  for (int n = 0; n < dim; ++n)
    t[n] = 2.0L * m * std::pow(1.0L - m, n) / std::pow(1.0L + m, n + 1);
  return t;
}

/// Dense radial scan minimum for phase-symmetric states.
inline double radial_min_reference(const FockDensityMatrix& rho, double r_max,
                                   int steps) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    const double r = r_max * i / (steps - 1);
    best = std::min(best, wigner_reference(rho, r, 0.0));
  }
  return best;
}

}  // namespace ngb::testing
