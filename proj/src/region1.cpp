#include "ngb/region1.hpp"

#include <cmath>

#include "ngb/metrics.hpp"

namespace ngb {

const char* to_string(Region r) { return r == Region::kI ? "I" : "II"; }

const char* to_string(Family f) {
  switch (f) {
    case Family::kAppendixA: return "appendixA";
    case Family::kRegion1Exact: return "region1_exact";
    case Family::kRegion1Approx: return "region1_approx";
    case Family::kRank2: return "rank2";
    case Family::kPsiA: return "psi_a";
    case Family::kPsiB: return "psi_b";
    case Family::kBeta: return "beta";
    case Family::kRho1: return "rho_1";
    case Family::kRho2: return "rho_2";
    case Family::kRho3: return "rho_3";
  }
  return "?";
}

std::pair<double, double> purity_bound_curve(double y) {
  if (!(y >= 1.0)) throw InvalidInput("purity_bound_curve: y < 1");
  const double N = std::floor(y);
  const double mu_g = 3.0 * (N - 2.0 * y) / (N * (5.0 + 4.0 * N) -
                                             6.0 * (1.0 + N) * y);
  const double mu = 2.0 * (N + 2.0 * N * N - 6.0 * N * y + 6.0 * y * y) /
                    (3.0 * (1.0 + N) * (N - 2.0 * y) * (N - 2.0 * y));
  return {mu_g, mu};
}

double purity_bound_approx(double mu_g) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("purity_bound_approx: mu_G outside (0, 1]");
  if (mu_g <= 0.6) return 8.0 * mu_g / (9.0 - mu_g * mu_g);
  return (1.0 - 4.0 * mu_g + 5.0 * mu_g * mu_g) / (2.0 * mu_g * mu_g);
}

double purity_floor(double mu_g) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("purity_floor: mu_G outside (0, 1]");
  if (mu_g >= 1.0) return 1.0;
  // mu_G(y) decreases from 1 at y=1; bracket then bisect.
  double lo = 1.0, hi = 2.0;
  while (purity_bound_curve(hi).first > mu_g) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw Inconsistency("purity_floor: bracket not found");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (purity_bound_curve(mid).first > mu_g ? lo : hi) = mid;
  }
  return purity_bound_curve(0.5 * (lo + hi)).second;
}

namespace {

// basis term of the ansatz: mu_G (1-mu_G)^x / (1+mu_G)^(x+1)
double thermal_basis(double mu_g, double x) {
  const double q = (1.0 - mu_g) / (1.0 + mu_g);
  return mu_g / (1.0 + mu_g) * std::pow(q, x);
}

}  // namespace

Region1Solution region1_exact(double mu_g, double x2, int n_min,
                              bool enforce_feasibility) {
  if (!(mu_g > 0.0 && mu_g < 1.0))
    throw InvalidInput("region1_exact: mu_G outside (0, 1)");
  if (n_min < 0) throw InvalidInput("region1_exact: negative n_min");
  if (!(x2 > n_min + 1.0))
    throw InvalidInput("region1_exact: requires x2 > n_min + 1");

  const double r = mu_g;
  const double q = (1.0 - r) / (1.0 + r);
  const int a = n_min;
  const int M = static_cast<int>(std::floor(x2));
  const int count = M - a + 1;

  // partial power sums over the window [a, M]
  double s0 = count;
  double s1 = 0.0, s2 = 0.0, g0 = 0.0, g1 = 0.0, g0sq = 0.0;
  double qn = std::pow(q, a);
  for (int n = a; n <= M; ++n, qn *= q) {
    s1 += n;
    s2 += double(n) * n;
    g0 += qn;
    g1 += n * qn;
    g0sq += qn * qn;
  }
  const double b3 = r / (1.0 + r);

  Eigen::Matrix3d A;
  Eigen::Vector3d rhs;
  A << 1.0, x2, b3 * std::pow(q, x2),            // f(x2) = 0
      s0, s1, b3 * g0,                            // trace = 1
      2.0 * s1 + s0, 2.0 * s2 + s1, b3 * (2.0 * g1 + g0);  // 1/mu_G
  rhs << 0.0, 1.0, 1.0 / r;

  if (std::abs(A.determinant()) < tol::singular_system)
    throw DegenerateParameters("region1_exact: singular 3x3 system");
  const Eigen::Vector3d c = A.fullPivLu().solve(rhs);

  Region1Solution sol;
  sol.mu_g = mu_g;
  sol.x2 = x2;
  sol.n_min = a;
  sol.n_max = M;
  sol.a1 = c(0);
  sol.a2 = c(1);
  sol.a3 = c(2);

  auto f = [&](double x) {
    return sol.a1 + sol.a2 * x + sol.a3 * thermal_basis(r, x);
  };

  sol.weights.resize(count);
  double tb = sol.a3 * r / (1.0 + r) * std::pow(q, a);
  for (int n = a; n <= M; ++n, tb *= q)
    sol.weights(n - a) = sol.a1 + sol.a2 * n + tb;
  if (enforce_feasibility) {
    if (sol.weights.minCoeff() < -1e-12)
      throw InfeasibleRegion("region1_exact: negative weight in window");
    if (!(f(a) > 0.0))
      throw InfeasibleRegion("region1_exact: f(n_min) not positive");
    if (a > 0 && !(f(a - 1.0) < 0.0))
      throw InfeasibleRegion("region1_exact: f(n_min - 1) not negative");
  }

  // closed forms (geometric partial sums); cross-checked against the
  // reconstructed weights in the test suite
  const double qa = std::pow(q, a), qM1 = std::pow(q, M + 1);
  sol.overlap = sol.a1 * (qa - qM1) +
                sol.a2 / (2.0 * r) *
                    (qa * (2.0 * a * r + 1.0 - r) -
                     qM1 * (2.0 * (M + 1) * r + 1.0 - r)) +
                sol.a3 * r / 2.0 * (qa * qa - qM1 * qM1);

  const double A1 = sol.a1, A2 = sol.a2, A3 = sol.a3;
  const double poly =
      -(1.0 / 6.0) * (a - M - 1.0) *
      (6.0 * A1 * A1 + 6.0 * A1 * A2 * (a + M) +
       A2 * A2 * (2.0 * double(a) * M + a * (2.0 * a - 1.0) +
                  2.0 * double(M) * M + M));
  const double cross_lo =
      A3 / (4.0 * r) * qa *
      (r * (4.0 * A1 + A3 * r * qa) + A2 * ((4.0 * a - 2.0) * r + 2.0));
  const double qMM = std::pow(q, M);
  const double cross_hi =
      -A3 * (r - 1.0) / (4.0 * r * (r + 1.0) * (r + 1.0)) * qMM *
      (r * (A3 * (r - 1.0) * r * qMM - 4.0 * A1 * (r + 1.0)) -
       2.0 * A2 * (r + 1.0) * (2.0 * M * r + r + 1.0));
  sol.mu = poly + cross_lo + cross_hi;
  return sol;
}

std::pair<double, double> region1_approx(double mu_g, double x2) {
  if (!(mu_g > 0.0 && mu_g < 1.0))
    throw InvalidInput("region1_approx: mu_G outside (0, 1)");
  if (!(x2 >= 2.0)) throw InvalidInput("region1_approx: x2 < 2");
  const double r = mu_g, x = x2;
  const double B = (r + 1.0) * (2.0 * r * x + r - 3.0);
  const double E = 2.0 * r * r * x * x + 2.0 * r * r * x - r * r +
                   4.0 * r * x + 2.0 * r + 3.0;
  const double P = -(2.0 * x + 1.0) * (2.0 * x + 1.0) * r * r * r * r +
                   4.0 * (4.0 * x * x * x + 6.0 * x * x - 1.0) * r * r * r +
                   18.0 * (2.0 * x * x + 2.0 * x + 1.0) * r * r +
                   12.0 * (2.0 * x + 1.0) * r - 9.0;
  // V = ((1-mu_G)/(1+mu_G))^x2 stays in (0, 1]; keeps everything finite for
  // mu_G -> 1 where the inverse power explodes
  const double V = std::pow((1.0 - r) / (1.0 + r), x);
  const double D = B + E * V;
  const double mu = r * (B * B + 8.0 * r * (2.0 * x + 1.0) * B * V + P * V * V) /
                    (D * D);
  const double T = r *
                   (B + 4.0 * r * (2.0 * x + 1.0) * V -
                    (r - 1.0) * (2.0 * r * x + r + 3.0) * V * V) /
                   D;
  return {mu, T};
}

BoundPoint rank2_boundary(int n, double a) {
  if (n < 0 || a < -1e-12 || a > 1.0 + 1e-12)
    throw InvalidInput("rank2_boundary: parameters out of range");
  a = std::min(1.0, std::max(0.0, a));
  BoundPoint pt;
  pt.mu_g = 1.0 / (2.0 * n + 3.0 - 2.0 * a);
  pt.mu = a * a + (1.0 - a) * (1.0 - a);
  const RealVector t = thermal_weights(pt.mu_g, n + 2);
  pt.overlap = a * t(n) + (1.0 - a) * t(n + 1);
  pt.delta = non_gaussianity(pt.mu, pt.mu_g, pt.overlap);
  pt.region = Region::kI;
  pt.family = Family::kRank2;
  pt.rank = 2;
  pt.n = n;
  pt.param1 = a;
  return pt;
}

FockDensityMatrix region1_state(double mu_g, double x2, int n_min) {
  const Region1Solution sol = region1_exact(mu_g, x2, n_min);
  RealVector w = RealVector::Zero(sol.n_max + 3);  // zero tail for convergence checks
  for (int n = sol.n_min; n <= sol.n_max; ++n)
    w(n) = std::max(0.0, sol.weights(n - sol.n_min));
  return FockDensityMatrix::from_diagonal(w);
}

SweepResult region1_sweep(const SweepSpec& spec) {
  SweepResult out;
  for (int i = 0; i < spec.mu_g_steps; ++i) {
    const double mu_g = spec.mu_g_min + (spec.mu_g_max - spec.mu_g_min) * i /
                                            std::max(1, spec.mu_g_steps - 1);
    for (int j = 0; j < spec.x2_steps; ++j) {
      const double x2 = spec.x2_min + (spec.x2_max - spec.x2_min) * j /
                                          std::max(1, spec.x2_steps - 1);
      bool emitted = false;
      for (int n_min = 0; n_min <= spec.n_min_cap && !emitted; ++n_min) {
        if (!(x2 > n_min + 1.0)) break;
        try {
          const Region1Solution sol = region1_exact(mu_g, x2, n_min);
          BoundPoint pt;
          pt.mu_g = mu_g;
          pt.mu = sol.mu;
          pt.overlap = sol.overlap;
          pt.delta = non_gaussianity(pt.mu, pt.mu_g, pt.overlap);
          pt.region = Region::kI;
          pt.family = Family::kRegion1Exact;
          pt.rank = sol.n_max - sol.n_min;
          pt.n = sol.n_min;
          pt.param1 = x2;
          out.points.push_back(pt);
          emitted = true;
        } catch (const InfeasibleRegion&) {
        } catch (const DegenerateParameters&) {
        }
      }
      if (!emitted) ++out.skipped;
    }
  }
  return out;
}

}  // namespace ngb
