#include "ngb/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ngb/parallel.hpp"
#include "ngb/region1.hpp"
#include "ngb/rng.hpp"
#include "ngb/wigner.hpp"

namespace ngb {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Allocation-free least-norm solve on one support via the KKT system
// A A^T lambda = b, p = A^T lambda. Accepts p when it is (near) nonnegative
// and reproduces the constraints.
class SupportSolver {
 public:
  SupportSolver(const RealVector& thermal, const Eigen::Vector3d& b)
      : t_(thermal), b_(b) {}

  bool minimum(const int* idx, int len, double* value) const {
    Eigen::Matrix3d aat = Eigen::Matrix3d::Zero();
    for (int c = 0; c < len; ++c) {
      const double row[3] = {1.0, 2.0 * idx[c] + 1.0, t_(idx[c])};
      for (int a = 0; a < 3; ++a)
        for (int bb = a; bb < 3; ++bb) aat(a, bb) += row[a] * row[bb];
    }
    aat(1, 0) = aat(0, 1);
    aat(2, 0) = aat(0, 2);
    aat(2, 1) = aat(1, 2);

    Eigen::Vector3d lambda;
    if (std::abs(aat.determinant()) > 1e-12) {
      lambda = aat.llt().solve(b_);
      if (!lambda.allFinite()) return false;
    } else {
      lambda = aat.completeOrthogonalDecomposition().solve(b_);
    }
    double obj = 0.0;
    double resid[3] = {-b_(0), -b_(1), -b_(2)};
    for (int c = 0; c < len; ++c) {
      const double row[3] = {1.0, 2.0 * idx[c] + 1.0, t_(idx[c])};
      const double p = row[0] * lambda(0) + row[1] * lambda(1) +
                       row[2] * lambda(2);
      if (p < -1e-10) return false;
      obj += p * p;
      for (int a = 0; a < 3; ++a) resid[a] += row[a] * p;
    }
    if (std::abs(resid[0]) > 1e-9 || std::abs(resid[1]) > 1e-9 ||
        std::abs(resid[2]) > 1e-9)
      return false;
    *value = obj;
    return true;
  }

 private:
  const RealVector& t_;
  Eigen::Vector3d b_;
};

}  // namespace

double min_purity_qp(double mu_g, double overlap, int max_level) {
  if (!(mu_g > 0.0 && mu_g < 1.0))
    throw InvalidInput("min_purity_qp: mu_G outside (0, 1)");
  if (max_level < 2 || max_level > 60)
    throw InvalidInput("min_purity_qp: max_level out of range");
  const int dim = max_level + 1;
  const RealVector t = thermal_weights(mu_g, dim);
  const Eigen::Vector3d b(1.0, 1.0 / mu_g, overlap);
  const SupportSolver solver(t, b);

  double best = std::numeric_limits<double>::infinity();
  bool feasible = false;
  double value = 0.0;

  // contiguous windows (where the structural solution lives)
  std::vector<int> window(dim);
  for (int n = 0; n < dim; ++n) window[n] = n;
  for (int lo = 0; lo < dim; ++lo) {
    for (int hi = lo; hi < dim; ++hi) {
      if (solver.minimum(window.data() + lo, hi - lo + 1, &value)) {
        feasible = true;
        best = std::min(best, value);
      }
    }
  }
  // all subsets of size <= 4 (independence safeguard; the size-<=3 exact
  // solves double as the LP basic-solution feasibility check)
  int idx[4];
  for (idx[0] = 0; idx[0] < dim; ++idx[0]) {
    if (solver.minimum(idx, 1, &value)) {
      feasible = true;
      best = std::min(best, value);
    }
    for (idx[1] = idx[0] + 1; idx[1] < dim; ++idx[1]) {
      if (solver.minimum(idx, 2, &value)) {
        feasible = true;
        best = std::min(best, value);
      }
      for (idx[2] = idx[1] + 1; idx[2] < dim; ++idx[2]) {
        if (solver.minimum(idx, 3, &value)) {
          feasible = true;
          best = std::min(best, value);
        }
        for (idx[3] = idx[2] + 1; idx[3] < dim; ++idx[3]) {
          if (solver.minimum(idx, 4, &value)) {
            feasible = true;
            best = std::min(best, value);
          }
        }
      }
    }
  }
  if (!feasible)
    throw InfeasibleRegion(
        "min_purity_qp: no nonnegative basic solution on any support");
  return best;
}

namespace {

// Random states live exactly on levels 0..dim-3 (the top two levels stay
// empty) so the cutoff-convergence contract holds with zero tail. A random
// geometric damping factor spreads the draws over the mu_G range.

FockDensityMatrix random_diagonal(CounterRng& rng, int dim) {
  RealVector w = RealVector::Zero(dim);
  const double zeta = rng.uniform(0.3, 1.0);
  double damp = 1.0;
  for (int n = 0; n + 2 < dim; ++n, damp *= zeta)
    w(n) = -std::log(1.0 - rng.uniform()) * damp;
  return FockDensityMatrix::from_diagonal(w);
}

FockDensityMatrix random_low_rank(CounterRng& rng, int dim, int rank) {
  const int support = dim - 2;
  const double zeta = rng.uniform(0.55, 0.95);
  ComplexMatrix basis(support, rank);
  for (int r = 0; r < rank; ++r) {
    double damp = 1.0;
    for (int n = 0; n < support; ++n, damp *= zeta)
      basis(n, r) = damp * Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  const ComplexMatrix q =
      qr.householderQ() * ComplexMatrix::Identity(support, rank);
  RealVector probs(rank);
  for (int r = 0; r < rank; ++r) probs(r) = -std::log(1.0 - rng.uniform());
  probs /= probs.sum();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m.topLeftCorner(support, support) =
      q * probs.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint();
  return FockDensityMatrix::from_matrix(std::move(m));
}

// margin of one summarized state against the bound surface at its cell
double margin_of(const StateSummary& s) {
  const auto pt = surface_min_overlap(s.mu_g, std::min(1.0, s.mu));
  if (!pt) return 0.0;  // unreachable cell: nothing to violate
  return s.overlap - pt->overlap;
}

}  // namespace

OracleReport sample_and_check(int count, int dim, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(seed);
  OracleReport report;
  report.scenario = "sample_and_check";
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();

  // states drawn sequentially (the counter stream fixes them), margins
  // evaluated in parallel, reduced in trial order
  std::vector<FockDensityMatrix> states;
  states.reserve(count + std::max(1, count / 10));
  for (int i = 0; i < count; ++i) states.push_back(random_diagonal(rng, dim));
  const int mixtures = std::max(1, count / 10);
  for (int i = 0; i < mixtures; ++i)
    states.push_back(
        random_low_rank(rng, dim, 1 + static_cast<int>(rng.next_u64() % 4)));

  const int total = static_cast<int>(states.size());
  std::vector<double> margins(total);
  std::vector<StateSummary> summaries(total);
  parallel_for(total, [&](int i) {
    summaries[i] = summarize(states[i]);
    margins[i] = margin_of(summaries[i]);
  });

  for (int i = 0; i < total; ++i) {
    ++report.trials;
    if (margins[i] < report.worst_margin) {
      report.worst_margin = margins[i];
      if (margins[i] < 0.0)
        report.offender = OracleReport::Offender{states[i], summaries[i]};
    }
  }
  report.runtime_seconds = seconds_since(t0);
  return report;
}

double pure_min_overlap_search(double mu_g, int max_level) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("pure_min_overlap_search: mu_G outside (0, 1]");
  double best = std::numeric_limits<double>::infinity();
  // all gap >= 3 pairs
  for (int j = 0; j <= max_level; ++j) {
    for (int k = j + 3; k <= max_level; ++k) {
      const auto T = pure_pair_overlap(j, k, mu_g, nullptr);
      if (T) best = std::min(best, *T);
    }
  }
  // three-term combinations: one free weight, scanned densely. T is linear
  // in the weights, so these can only tie the pair minima; kept as a check.
  const RealVector t = thermal_weights(mu_g, max_level + 1);
  for (int j = 0; j + 6 <= max_level; ++j) {
    for (int k = j + 3; k + 3 <= max_level; ++k) {
      for (int l = k + 3; l <= max_level; ++l) {
        for (int step = 0; step <= 20; ++step) {
          const double wj = step / 20.0;
          // remaining two weights pinned by normalization + covariance
          const double rhs1 = 1.0 - wj;
          const double rhs2 = 1.0 / mu_g - wj * (2.0 * j + 1.0);
          const double det = (2.0 * k + 1.0) - (2.0 * l + 1.0);
          const double wk = (rhs2 - rhs1 * (2.0 * l + 1.0)) / det;
          const double wl = rhs1 - wk;
          if (wk < -1e-12 || wl < -1e-12) continue;
          best = std::min(best, wj * t(j) + wk * t(k) + wl * t(l));
        }
      }
    }
  }
  if (!std::isfinite(best))
    throw InfeasibleRegion("pure_min_overlap_search: no admissible state");
  return best;
}

OracleReport rank3_spot_check(const Rank3Spec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleReport report;
  report.scenario = "rank3_spot_check";
  report.seed = spec.seed;
  report.worst_margin = std::numeric_limits<double>::infinity();

  for (int n = 0; n <= spec.n_max; ++n) {
    for (int i = 1; i <= 2; ++i) {
      for (int m = 0; m <= spec.m_max; ++m) {
        if (m == n || m == n + 3 || m == n + i) continue;
        for (int ai = 0; ai <= spec.amp_steps; ++ai) {
          const double amp = double(ai) / spec.amp_steps;
          for (int pi = 1; pi < spec.p_steps; ++pi) {
            for (int qi = 1; qi + pi < spec.p_steps; ++qi) {
              const double p1 = double(pi) / spec.p_steps;
              const double p2 = double(qi) / spec.p_steps;
              const double p3 = 1.0 - p1 - p2;
              const int dim = std::max({n + 3, n + i, m}) + 3;
              ComplexVector psi = ComplexVector::Zero(dim);
              psi(n) = std::sqrt(amp);
              psi(n + 3) = std::sqrt(1.0 - amp);
              ComplexMatrix rho = p1 * (psi * psi.adjoint());
              rho(n + i, n + i) += p2;
              rho(m, m) += p3;
              const auto state = FockDensityMatrix::from_matrix(std::move(rho));
              const StateSummary s = summarize(state);
              const double mg = margin_of(s);
              ++report.trials;
              if (mg < report.worst_margin) {
                report.worst_margin = mg;
                if (mg < 0.0)
                  report.offender = OracleReport::Offender{state, s};
              }
            }
          }
        }
      }
    }
  }
  report.runtime_seconds = seconds_since(t0);
  return report;
}

std::vector<PositivityPoint> positivity_scan(const BoundSurface& surface) {
  std::vector<PositivityPoint> out(surface.points.size());
  parallel_for(static_cast<int>(surface.points.size()), [&](int i) {
    const BoundPoint& pt = surface.points[i];
    const FockDensityMatrix rho = realize(pt);
    const WignerMin wm = min_wigner(rho, suggest_grid(rho));
    out[i].point = pt;
    out[i].min_wigner = wm.value;
    out[i].nonnegative = wm.nonnegative;
  });
  return out;
}

OracleReport lemma_suite(int count, int dim, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(seed);
  OracleReport report;
  report.scenario = "lemma";
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < count; ++trial) {
    // symmetric-class random state: mixture of vectors supported on levels
    // congruent mod 3, so every coherence has gap >= 3
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    const int terms = 2 + static_cast<int>(rng.next_u64() % 3);
    const double zeta = rng.uniform(0.5, 0.95);
    RealVector probs(terms);
    for (int r = 0; r < terms; ++r) probs(r) = -std::log(1.0 - rng.uniform());
    probs /= probs.sum();
    for (int r = 0; r < terms; ++r) {
      const int residue = static_cast<int>(rng.next_u64() % 3);
      ComplexVector v = ComplexVector::Zero(dim);
      for (int n = residue; n + 2 < dim; n += 3)
        v(n) = std::pow(zeta, n) * Complex(rng.normal(), rng.normal());
      v.normalize();
      m += probs(r) * (v * v.adjoint());
    }
    const auto rho = FockDensityMatrix::from_matrix(std::move(m));
    const StateSummary before = summarize(rho);
    const StateSummary after = summarize(phase_average(rho));

    // margin: how far the lemma inequalities hold
    const double purity_margin = before.mu + 1e-12 - after.mu;
    const double pres = std::max(std::abs(before.mu_g - after.mu_g),
                                 std::abs(before.overlap - after.overlap));
    const double mg = std::min(purity_margin, 1e-9 - pres);
    ++report.trials;
    if (mg < report.worst_margin) {
      report.worst_margin = mg;
      if (mg < 0.0) report.offender = OracleReport::Offender{rho, before};
    }
  }
  report.runtime_seconds = seconds_since(t0);
  return report;
}

}  // namespace ngb
