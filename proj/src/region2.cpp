#include "ngb/region2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ngb/metrics.hpp"
#include "ngb/parallel.hpp"

namespace ngb {

namespace {

double quartic(int n, double x) {
  return ((x - 2.0 * (1 + n)) * x - 4.0) * x * x - 6.0 * (1 + n) * x + 3.0;
}

// bisection for a monotone sign change of f on [lo, hi]
template <class F>
double bisect(F&& f, double lo, double hi, int iters = 100) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double quartic_root(int n) {
  if (n < 0) throw InvalidInput("quartic_root: negative n");
  const double lo = 1.0 / (2.0 * n + 3.0), hi = 1.0 / (2.0 * n + 1.0);
  if (!(quartic(n, lo) > 0.0 && quartic(n, hi) < 0.0))
    throw Inconsistency("quartic_root: no sign change on the bracket");
  double a = lo, b = hi;
  while (b - a > 1e-13) {
    const double mid = 0.5 * (a + b);
    (quartic(n, mid) > 0.0 ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

std::optional<double> pure_pair_overlap(int j, int k, double mu_g,
                                        double* amp_out) {
  const double amp = ((2.0 * k + 1.0) - 1.0 / mu_g) / (2.0 * (k - j));
  if (amp < -1e-12 || amp > 1.0 + 1e-12) return std::nullopt;
  const double a = std::min(1.0, std::max(0.0, amp));
  if (amp_out) *amp_out = a;
  const double q = (1.0 - mu_g) / (1.0 + mu_g);
  const double T = 2.0 * mu_g / (1.0 + mu_g) *
                   (a * std::pow(q, j) + (1.0 - a) * std::pow(q, k));
  return T;
}

namespace {

double beta_mu_g_of_alpha(int n, double a) {
  if (n == 0) return 1.0 / std::sqrt((3.0 - 2.0 * a) * (4.0 * a * a - 6.0 * a + 3.0));
  return 1.0 / std::sqrt((5.0 - 2.0 * a) * (8.0 * a * a - 10.0 * a + 5.0));
}

double beta_overlap_of_alpha(int n, double a) {
  if (n == 0) {
    const double num =
        -(-2.0 * std::pow(a, 5) + 8.0 * std::pow(a, 4) - 12.0 * a * a * a +
          5.0 * a * a + 4.0 * a - 4.0);
    const double den = std::pow(2.0 - a, 1.5) *
                       std::pow(2.0 * a * a - 3.0 * a + 2.0, 2.5);
    return std::exp((a - 1.0) * a / (2.0 * a * a - 3.0 * a + 2.0)) * num / den;
  }
  const double poly =
      64.0 * std::pow(a, 10) - 560.0 * std::pow(a, 9) +
      2156.0 * std::pow(a, 8) - 4668.0 * std::pow(a, 7) +
      6004.0 * std::pow(a, 6) - 4211.0 * std::pow(a, 5) +
      494.0 * std::pow(a, 4) + 1938.0 * a * a * a - 1908.0 * a * a +
      837.0 * a - 162.0;
  const double den = std::pow(3.0 - a, 2.5) *
                     std::pow(4.0 * a * a - 5.0 * a + 3.0, 4.5);
  return -2.0 * std::exp(2.0 * (a - 1.0) * a / (4.0 * a * a - 5.0 * a + 3.0)) *
         poly / den;
}

FockDensityMatrix two_level_pure(int j, int k, double amp) {
  ComplexVector psi = ComplexVector::Zero(k + 3);
  psi(j) = std::sqrt(amp);
  psi(k) = std::sqrt(1.0 - amp);
  return FockDensityMatrix::from_pure(psi);
}

}  // namespace

BetaPoint beta_family(int n, double alpha) {
  if (n != 0 && n != 1) throw InvalidInput("beta_family: n must be 0 or 1");
  if (alpha < -1e-12 || alpha > 1.0 + 1e-12)
    throw InvalidInput("beta_family: alpha outside [0, 1]");
  alpha = std::min(1.0, std::max(0.0, alpha));
  BetaPoint out;
  out.mu_g = beta_mu_g_of_alpha(n, alpha);
  out.overlap = beta_overlap_of_alpha(n, alpha);
  out.state = two_level_pure(n, n + 1, alpha);
  return out;
}

std::vector<double> beta_alphas(int n, double mu_g) {
  if (n != 0 && n != 1) throw InvalidInput("beta_alphas: n must be 0 or 1");
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("beta_alphas: mu_G outside (0, 1]");
  std::vector<double> out;
  if (n == 0) {
    // (3-2a)(4a^2-6a+3) = 8(1-a)^3 + 1, so the inversion is a cube root
    if (mu_g < 1.0 / 3.0 - 1e-12 || mu_g > 1.0 + 1e-12) return out;
    const double c = 1.0 / (mu_g * mu_g);
    out.push_back(1.0 - std::cbrt((c - 1.0) / 8.0));
    return out;
  }
  // g(a) = (5-2a)(8a^2-10a+5) decreases to a* = (5-sqrt5)/4 then increases
  const double a_star = (5.0 - std::sqrt(5.0)) / 4.0;
  auto g = [](double a) {
    return (5.0 - 2.0 * a) * (8.0 * a * a - 10.0 * a + 5.0);
  };
  const double c = 1.0 / (mu_g * mu_g);
  if (c > g(0.0) + 1e-12 || c < g(a_star) - 1e-12) return out;
  if (c >= g(a_star)) {
    if (c <= g(0.0))
      out.push_back(bisect([&](double a) { return g(a) - c; }, 0.0, a_star));
    if (c <= g(1.0))
      out.push_back(bisect([&](double a) { return c - g(a); }, a_star, 1.0));
  }
  return out;
}

PureMinPoint pure_min_overlap(double mu_g) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("pure_min_overlap: mu_G outside (0, 1]");
  mu_g = std::min(mu_g, 1.0);

  PureMinPoint best;
  best.mu_g = mu_g;
  best.overlap = 2.0;  // above any attainable overlap

  // segment index: 1/(2n+3) <= mu_G <= 1/(2n+1)
  const int seg = std::max(0, static_cast<int>(
                                  std::floor((1.0 / mu_g - 1.0) / 2.0)));

  // gap-3 two-level family (psi_a on its own segment, psi_b two below)
  const int j_hi = static_cast<int>(std::ceil(0.5 / mu_g)) + 2;
  for (int j = 0; j <= j_hi; ++j) {
    double amp = 0.0;
    const auto T = pure_pair_overlap(j, j + 3, mu_g, &amp);
    if (!T || *T >= best.overlap) continue;
    best.overlap = *T;
    best.minimizer.family = (j == seg) ? Family::kPsiA
                           : (j == seg - 2) ? Family::kPsiB
                                            : Family::kPsiA;
    best.minimizer.n = j;
    best.minimizer.param1 = amp;
    best.minimizer.state = two_level_pure(j, j + 3, amp);
  }

  // beta families on the first two segments (displaced reference)
  for (int n = 0; n <= 1; ++n) {
    for (const double alpha : beta_alphas(n, mu_g)) {
      const double T = beta_overlap_of_alpha(n, alpha);
      if (T >= best.overlap) continue;
      best.overlap = T;
      best.minimizer.family = Family::kBeta;
      best.minimizer.n = n;
      best.minimizer.param1 = alpha;
      best.minimizer.state = two_level_pure(n, n + 1, alpha);
    }
  }
  return best;
}

FamilyPoint mixed_family(int n, int i, double p, double amp) {
  if (n < 0 || (i != 1 && i != 2))
    throw InvalidInput("mixed_family: need n >= 0 and i in {1, 2}");
  if (p < -1e-12 || p > 1.0 + 1e-12 || amp < -1e-12 || amp > 1.0 + 1e-12)
    throw InvalidInput("mixed_family: p, amp must lie in [0, 1]");
  p = std::min(1.0, std::max(0.0, p));
  amp = std::min(1.0, std::max(0.0, amp));

  const int dim = n + 6;
  RealVector diag = RealVector::Zero(dim);
  diag(n) += p * amp;
  diag(n + 3) += p * (1.0 - amp);
  diag(n + i) += 1.0 - p;

  FamilyPoint out;
  out.mu = p * p + (1.0 - p) * (1.0 - p);
  out.mu_g = 1.0 / (diag.dot(2.0 * RealVector::LinSpaced(dim, 0, dim - 1) +
                             RealVector::Ones(dim)));
  out.overlap = thermal_overlap(diag, out.mu_g);

  ComplexVector psi = ComplexVector::Zero(dim);
  psi(n) = std::sqrt(amp);
  psi(n + 3) = std::sqrt(1.0 - amp);
  ComplexMatrix m = p * (psi * psi.adjoint());
  m(n + i, n + i) += 1.0 - p;
  out.state = FockDensityMatrix::from_matrix(std::move(m));
  return out;
}

FamilyPoint assy_family(int n, double a, Complex b) {
  if (n != 0 && n != 1) throw InvalidInput("assy_family: n must be 0 or 1");
  if (a < -1e-12 || a > 1.0 + 1e-12)
    throw InvalidInput("assy_family: a outside [0, 1]");
  a = std::min(1.0, std::max(0.0, a));
  const double b2 = std::norm(b);
  if (b2 > a * (1.0 - a) + 1e-12)
    throw InvalidInput("assy_family: |b| violates the PSD disc");

  FamilyPoint out;
  out.mu = a * a + (1.0 - a) * (1.0 - a) + 2.0 * b2;
  out.mu_g = 1.0 / std::sqrt((2.0 * n + 3.0 - 2.0 * a) *
                             (2.0 * n + 3.0 - 2.0 * a -
                              4.0 * (n + 1.0) * b2));
  if (n == 0) {
    const double num = 2.0 * (a - 1.0) * b2 * b2 +
                       2.0 * (a - 2.0) * a * b2 + (a - 2.0) * (a - 2.0);
    out.overlap = std::exp(b2 / (a + 2.0 * b2 - 2.0)) * num /
                  (std::pow(2.0 - a, 1.5) * std::pow(2.0 - a - 2.0 * b2, 2.5));
  } else {
    const double am3 = a - 3.0;
    const double num =
        16.0 * (4.0 * a * a - 15.0 * a + 15.0) * std::pow(b2, 4) +
        8.0 * (8.0 * a * a * a - 45.0 * a * a + 70.0 * a - 21.0) *
            std::pow(b2, 3) +
        2.0 * am3 * am3 * (10.0 * a * a - 9.0 * a - 25.0) * b2 * b2 +
        2.0 * am3 * am3 * am3 * (a * a + 3.0 * a - 10.0) * b2 +
        std::pow(am3, 4) * (a - 2.0);
    out.overlap = -2.0 * std::exp(2.0 * b2 / (a + 4.0 * b2 - 3.0)) * num /
                  (std::pow(3.0 - a, 2.5) * std::pow(3.0 - a - 4.0 * b2, 4.5));
  }

  const int dim = n + 4;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(n, n) = a;
  m(n + 1, n + 1) = 1.0 - a;
  m(n, n + 1) = b;
  m(n + 1, n) = std::conj(b);
  out.state = FockDensityMatrix::from_matrix(std::move(m));
  return out;
}

namespace {

struct Candidate {
  double overlap;
  BoundPoint point;
};

void consider(std::optional<Candidate>& best, const BoundPoint& pt) {
  if (!best || pt.overlap < best->overlap) best = Candidate{pt.overlap, pt};
}

// region-I candidates: root-find x2 with mu^ex(mu_g, x2, n_min) = mu for each
// feasible n_min; mu(x2) on the feasible window is dip-shaped, so bracket the
// dip and bisect both flanks (plus any coarse-scan sign changes).
void region1_candidates(double mu_g, double mu,
                        std::optional<Candidate>& best) {
  const int n_min_cap =
      std::max(0, static_cast<int>(std::floor((1.0 / mu_g - 1.0) / 2.0)));
  const double x2_max = std::max(12.0, 3.2 / mu_g + 6.0);

  for (int n_min = 0; n_min <= n_min_cap; ++n_min) {
    auto mu_of = [&](double x2) -> double {
      try {
        return region1_exact(mu_g, x2, n_min).mu;
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };

    const double x_lo = n_min + 1.0 + 1e-7;
    const int kScan = 128;
    std::vector<double> xs(kScan), mus(kScan);
    for (int s = 0; s < kScan; ++s) {
      xs[s] = x_lo + (x2_max - x_lo) * s / (kScan - 1);
      mus[s] = mu_of(xs[s]);
    }

    // feasibility-edge refinement: bisect between an infeasible and a
    // feasible abscissa, return the feasible end
    auto refine_edge = [&](double bad, double good) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (bad + good);
        (std::isnan(mu_of(mid)) ? bad : good) = mid;
      }
      return good;
    };

    std::vector<std::pair<double, double>> brackets;
    for (int s = 0; s + 1 < kScan; ++s) {
      const bool a_ok = !std::isnan(mus[s]), b_ok = !std::isnan(mus[s + 1]);
      if (a_ok && b_ok) {
        if ((mus[s] - mu) * (mus[s + 1] - mu) <= 0.0)
          brackets.emplace_back(xs[s], xs[s + 1]);
      } else if (!a_ok && b_ok) {
        const double xe = refine_edge(xs[s], xs[s + 1]);
        const double me = mu_of(xe);
        if (!std::isnan(me) && (me - mu) * (mus[s + 1] - mu) <= 0.0)
          brackets.emplace_back(xe, xs[s + 1]);
      } else if (a_ok && !b_ok) {
        const double xe = refine_edge(xs[s + 1], xs[s]);
        const double me = mu_of(xe);
        if (!std::isnan(me) && (mus[s] - mu) * (me - mu) <= 0.0)
          brackets.emplace_back(xs[s], xe);
      }
    }

    for (const auto& [blo, bhi] : brackets) {
      double lo = blo, hi = bhi;
      double flo = mu_of(lo) - mu;
      bool ok = true;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mu_of(mid) - mu;
        if (std::isnan(fm)) {
          ok = false;
          break;
        }
        if ((flo <= 0.0) == (fm <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      if (!ok) continue;
      const double x2 = 0.5 * (lo + hi);
      try {
        const Region1Solution sol = region1_exact(mu_g, x2, n_min);
        if (std::abs(sol.mu - mu) > 1e-7) continue;
        BoundPoint pt;
        pt.mu_g = mu_g;
        pt.mu = mu;
        pt.overlap = sol.overlap;
        pt.delta = non_gaussianity(mu, mu_g, sol.overlap);
        pt.region = Region::kI;
        pt.family = Family::kRegion1Exact;
        pt.rank = sol.n_max - sol.n_min;
        pt.n = n_min;
        pt.param1 = x2;
        consider(best, pt);
      } catch (const Error&) {
      }
    }
  }
}

void rho_i_candidates(double mu_g, double mu,
                      std::optional<Candidate>& best) {
  if (mu < 0.5 - 1e-12 || mu > 1.0 + 1e-12) return;
  const double s = std::sqrt(std::max(0.0, 2.0 * mu - 1.0));
  const int n_cap =
      std::max(0, static_cast<int>(std::ceil((1.0 / mu_g - 1.0) / 2.0))) + 2;
  for (const double p : {(1.0 + s) / 2.0, (1.0 - s) / 2.0}) {
    if (p < 1e-12) continue;
    for (int n = 0; n <= n_cap; ++n) {
      for (int i = 1; i <= 2; ++i) {
        const double amp = (p * (2.0 * n + 7.0) +
                            (1.0 - p) * (2.0 * (n + i) + 1.0) - 1.0 / mu_g) /
                           (6.0 * p);
        if (amp < -1e-12 || amp > 1.0 + 1e-12) continue;
        const FamilyPoint fp = mixed_family(n, i, p, amp);
        BoundPoint pt;
        pt.mu_g = mu_g;
        pt.mu = mu;
        pt.overlap = fp.overlap;
        pt.delta = non_gaussianity(mu, mu_g, fp.overlap);
        pt.region = Region::kII;
        pt.family = i == 1 ? Family::kRho1 : Family::kRho2;
        pt.rank = p >= 1.0 - 1e-12 ? 1 : 2;
        pt.n = n;
        pt.param1 = p;
        pt.param2 = amp;
        consider(best, pt);
      }
    }
  }
}

void rho_3_candidates(double mu_g, double mu,
                      std::optional<Candidate>& best) {
  if (mu < 0.5 - 1e-12 || mu > 1.0 + 1e-12) return;
  const double s = std::sqrt(std::max(0.0, 2.0 * mu - 1.0));
  const double a_lo = (1.0 - s) / 2.0, a_hi = (1.0 + s) / 2.0;
  for (int n = 0; n <= 1; ++n) {
    auto g = [&](double a) {
      const double b2 = (mu - a * a - (1.0 - a) * (1.0 - a)) / 2.0;
      return (2.0 * n + 3.0 - 2.0 * a) *
                 (2.0 * n + 3.0 - 2.0 * a - 4.0 * (n + 1.0) * b2) -
             1.0 / (mu_g * mu_g);
    };
    const int kScan = 200;
    for (int sdx = 0; sdx + 1 < kScan; ++sdx) {
      const double a0 = a_lo + (a_hi - a_lo) * sdx / (kScan - 1);
      const double a1 = a_lo + (a_hi - a_lo) * (sdx + 1) / (kScan - 1);
      if (g(a0) * g(a1) > 0.0) continue;
      const double a = bisect(g, a0, a1);
      const double b2 = (mu - a * a - (1.0 - a) * (1.0 - a)) / 2.0;
      if (b2 < -1e-12) continue;
      try {
        const FamilyPoint fp =
            assy_family(n, a, Complex(std::sqrt(std::max(0.0, b2)), 0.0));
        BoundPoint pt;
        pt.mu_g = mu_g;
        pt.mu = mu;
        pt.overlap = fp.overlap;
        pt.delta = non_gaussianity(mu, mu_g, fp.overlap);
        pt.region = Region::kII;
        pt.family = Family::kRho3;
        pt.rank = b2 > 1e-12 && mu < 1.0 - 1e-12 ? 2 : 1;
        pt.n = n;
        pt.param1 = a;
        pt.param2 = std::sqrt(std::max(0.0, b2));
        consider(best, pt);
      } catch (const InvalidInput&) {
      }
    }
  }
}

}  // namespace

std::optional<BoundPoint> surface_min_overlap(double mu_g, double mu) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12 || !(mu > 0.0) ||
      mu > 1.0 + 1e-9)
    return std::nullopt;
  mu = std::min(mu, 1.0);
  if (mu_g >= 1.0 - 1e-12) {
    // the mu_G = 1 column collapses to the vacuum
    if (mu < 1.0 - 1e-9) return std::nullopt;
    BoundPoint pt;
    pt.mu_g = pt.mu = pt.overlap = 1.0;
    pt.delta = 0.0;
    pt.region = Region::kII;
    pt.family = Family::kPsiA;
    pt.rank = 1;
    return pt;
  }
  if (mu < purity_floor(mu_g) - 1e-9) return std::nullopt;

  std::optional<Candidate> best;
  region1_candidates(mu_g, mu, best);
  rho_i_candidates(mu_g, mu, best);
  rho_3_candidates(mu_g, mu, best);
  if (mu >= 1.0 - 1e-12) {
    const PureMinPoint pure = pure_min_overlap(mu_g);
    BoundPoint pt;
    pt.mu_g = mu_g;
    pt.mu = 1.0;
    pt.overlap = pure.overlap;
    pt.delta = non_gaussianity(1.0, mu_g, pure.overlap);
    pt.region = Region::kII;
    pt.family = pure.minimizer.family;
    pt.rank = 1;
    pt.n = pure.minimizer.n;
    pt.param1 = pure.minimizer.param1;
    // the explicit families must agree; keep the labeled one on ties
    if (best && pt.overlap <= best->overlap + 1e-12) best = Candidate{pt.overlap, pt};
    if (!best) best = Candidate{pt.overlap, pt};
  }
  if (!best) return std::nullopt;
  return best->point;
}

BoundSurface total_bound(const SurfaceSpec& spec) {
  BoundSurface out;
  const int total = spec.mu_g_steps * spec.mu_steps;
  out.cells = total;
  std::vector<std::optional<BoundPoint>> cells(total);
  parallel_for(total, [&](int idx) {
    const int i = idx / spec.mu_steps, j = idx % spec.mu_steps;
    const double mu_g =
        spec.mu_g_min + (spec.mu_g_max - spec.mu_g_min) * i /
                            std::max(1, spec.mu_g_steps - 1);
    const double mu = spec.mu_min + (spec.mu_max - spec.mu_min) * j /
                                        std::max(1, spec.mu_steps - 1);
    cells[idx] = surface_min_overlap(mu_g, mu);
  });
  for (const auto& c : cells) {
    if (!c) {
      ++out.skipped;
      continue;
    }
    out.points.push_back(*c);
    (c->region == Region::kI ? out.region_i : out.region_ii)++;
  }
  // region I/II border: the rank-2 family traced over the mu_G range
  for (int n = 12; n >= 0; --n)
    for (int k = 0; k <= 20; ++k)
      out.boundary.push_back(rank2_boundary(n, k / 20.0));
  return out;
}

FockDensityMatrix realize(const BoundPoint& pt) {
  switch (pt.family) {
    case Family::kAppendixA:
    case Family::kRegion1Exact:
    case Family::kRegion1Approx:
      return region1_state(pt.mu_g, pt.param1, pt.n);
    case Family::kRank2: {
      RealVector w = RealVector::Zero(pt.n + 4);
      w(pt.n) = pt.param1;
      w(pt.n + 1) = 1.0 - pt.param1;
      return FockDensityMatrix::from_diagonal(w);
    }
    case Family::kPsiA:
      return two_level_pure(pt.n, pt.n + 3, pt.param1);
    case Family::kPsiB:
      return two_level_pure(pt.n, pt.n + 3, pt.param1);
    case Family::kBeta:
      return two_level_pure(pt.n, pt.n + 1, pt.param1);
    case Family::kRho1:
      return mixed_family(pt.n, 1, pt.param1, pt.param2).state;
    case Family::kRho2:
      return mixed_family(pt.n, 2, pt.param1, pt.param2).state;
    case Family::kRho3:
      return assy_family(pt.n, pt.param1, Complex(pt.param2, 0.0)).state;
  }
  throw InvalidInput("realize: unknown family");
}

}  // namespace ngb
