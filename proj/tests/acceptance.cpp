// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code, next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ngb/metrics.hpp"
#include "ngb/oracle.hpp"
#include "ngb/region1.hpp"
#include "ngb/region2.hpp"
#include "ngb/rng.hpp"
#include "ngb/wigner.hpp"

using namespace ngb;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. floor-curve endpoint and Phi confinement
void criterion_1() {
  const auto [mg, mu] = purity_bound_curve(1.0);
  bool ok = std::abs(mg - 1.0) < 1e-12 && std::abs(mu - 1.0) < 1e-12;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double y = 1.0 + 999.0 * i / 9999.0;
    const auto [mu_g, m] = purity_bound_curve(y);
    const double phi = 1.0 / mu_g;
    worst = std::max(worst, 1.0 - phi);           // phi >= 1
    worst = std::max(worst, phi - 1.0 / m);       // phi <= 1/mu
    ok = ok && phi >= 1.0 - 1e-12 && phi <= 1.0 / m + 1e-9;
  }
  report(1, "purity-bound endpoints and confinement", ok,
         "worst excess " + num(worst));
}

// 2. approximate-formula branch continuity at mu_G = 3/5
void criterion_2() {
  const double left = 8.0 * 0.6 / (9.0 - 0.36);
  const double right = (1.0 - 4.0 * 0.6 + 5.0 * 0.36) / (2.0 * 0.36);
  const double d = std::max(std::abs(left - 5.0 / 9.0),
                            std::abs(right - 5.0 / 9.0));
  report(2, "floor-formula branch continuity at 3/5", d < 1e-12,
         "|delta| " + num(d));
}

// 3. exact solve equals the closed-form approximation at integer x2
void criterion_3() {
  double worst = 0.0;
  for (int x2 = 2; x2 <= 10; ++x2) {
    for (int i = 1; i <= 9; ++i) {
      const double mu_g = 0.1 * i;
      const auto sol = region1_exact(mu_g, double(x2), 0, false);
      const auto [mu_a, t_a] = region1_approx(mu_g, double(x2));
      worst = std::max({worst, std::abs(sol.mu - mu_a),
                        std::abs(sol.overlap - t_a)});
    }
  }
  report(3, "exact = approximation at integer x2", worst < 1e-9,
         "worst |delta| " + num(worst));
}

// 4. closed forms against independent matrix arithmetic, 200 triples
void criterion_4() {
  CounterRng rng(12345);
  double worst = 0.0;
  int done = 0;
  while (done < 200) {
    const double mu_g = rng.uniform(0.12, 0.9);
    const double x2 = rng.uniform(2.0, 9.0);
    const int n_min = static_cast<int>(rng.next_u64() % 3);
    try {
      const Region1Solution sol = region1_exact(mu_g, x2, n_min);
      const StateSummary s = summarize(region1_state(mu_g, x2, n_min));
      worst = std::max({worst, std::abs(sol.mu - s.mu),
                        std::abs(sol.overlap - s.overlap)});
      ++done;
    } catch (const Error&) {
    }
  }
  report(4, "closed forms vs summarize on 200 region-I triples",
         worst < 1e-8, "worst |delta| " + num(worst));
}

// 5. independent QP extremality on a 20x20 feasible grid
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cells = 0;
  for (int i = 0; i < 20; ++i) {
    const double mu_g = 0.15 + (0.85 - 0.15) * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double x2 = 2.05 + (8.0 - 2.05) * j / 19.0;
      try {
        const Region1Solution sol = region1_exact(mu_g, x2, 0);
        const double qp = min_purity_qp(mu_g, sol.overlap, 40);
        worst = std::max(worst, std::abs(qp - sol.mu));
        ++cells;
      } catch (const InfeasibleRegion&) {
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(5, "QP oracle matches the region-I bound",
         worst < 1e-6 && secs < 120.0 && cells >= 300,
         num(cells) + " cells, worst |delta mu| " + num(worst) + ", " +
             num(secs) + " s");
}

// 6. phase-averaging lemma on 100 seeded symmetric-class states
void criterion_6() {
  const OracleReport r = lemma_suite(100, 24, 0);
  report(6, "phase-averaging lemma suite", r.worst_margin >= 0.0,
         "worst margin " + num(r.worst_margin));
}

// 7. pure-state bound: number states, switch continuity, independent search
void criterion_7() {
  bool ok = true;
  std::string detail;

  const PureMinPoint one = pure_min_overlap(1.0 / 3.0);
  ok = ok && std::abs(one.overlap - 0.25) < 1e-10;

  double worst_switch = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const double rn = quartic_root(n);
    const auto ta = pure_pair_overlap(n, n + 3, rn);
    const auto tb = pure_pair_overlap(n - 2, n + 1, rn);
    if (!ta || !tb) {
      ok = false;
      continue;
    }
    worst_switch = std::max(worst_switch, std::abs(*ta - *tb));
  }
  ok = ok && worst_switch < 1e-8;

  double worst_undercut = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double mu_g = 0.07 + (0.97 - 0.07) * i / 49.0;
    const double searched = pure_min_overlap_search(mu_g, 34);
    const double closed = pure_min_overlap(mu_g).overlap;
    worst_undercut = std::max(worst_undercut, closed - searched);
  }
  ok = ok && worst_undercut < 1e-7;

  report(7, "pure-state bound (number states, r_n continuity, search)", ok,
         "switch " + num(worst_switch) + ", undercut " + num(worst_undercut));
}

// 8. family identities
void criterion_8() {
  double worst_b0 = 0.0, worst_beta = 0.0, worst_quad = 0.0;
  for (double a : {0.15, 0.3, 0.5, 0.7, 0.85}) {
    const FamilyPoint p = assy_family(0, a, 0.0);
    worst_b0 = std::max(worst_b0,
                        std::abs(p.overlap - 1.0 / ((2.0 - a) * (2.0 - a))));
  }
  for (int n : {0, 1}) {
    for (double a : {0.25, 0.5, 0.75}) {
      const FamilyPoint fp = assy_family(n, a, std::sqrt(a * (1.0 - a)));
      const BetaPoint bp = beta_family(n, a);
      worst_beta = std::max({worst_beta, std::abs(fp.mu_g - bp.mu_g),
                             std::abs(fp.overlap - bp.overlap)});
      const StateSummary s = summarize(bp.state);
      worst_quad = std::max(worst_quad, std::abs(s.overlap - bp.overlap));
    }
  }
  report(8, "family identities (assy/beta/quadrature)",
         worst_b0 < 1e-10 && worst_beta < 1e-8 && worst_quad < 1e-5,
         "b0 " + num(worst_b0) + ", beta " + num(worst_beta) + ", quad " +
             num(worst_quad));
}

// 9. no-violation sampling at full scale
void criterion_9() {
  const OracleReport r = sample_and_check(10000, 24, 0);
  report(9, "random-state sampling finds no violations",
         r.worst_margin >= -1e-6,
         num(r.trials) + " trials, worst margin " + num(r.worst_margin));
}

// 10. Wigner positivity program
void criterion_10() {
  bool ok = true;

  // |1> has minimum -1/pi at the origin; number states classify negative
  const auto one = FockDensityMatrix::from_diagonal(RealVector::Unit(4, 1));
  const WignerMin m1 = min_wigner(one, suggest_grid(one));
  ok = ok && std::abs(m1.value + 1.0 / M_PI) < 1e-9 && !m1.nonnegative;
  for (int n = 2; n <= 5; ++n) {
    const auto rho =
        FockDensityMatrix::from_diagonal(RealVector::Unit(n + 3, n));
    ok = ok && !min_wigner(rho, suggest_grid(rho)).nonnegative;
  }

  // low-purity region-I minimizers classify nonnegative, stably under
  // refinement
  int checked = 0;
  double worst_flip_margin = 1.0;
  bool stable = true;
  for (double mu_g : {0.2, 0.35, 0.5, 0.65}) {
    for (double x2 : {6.0, 8.0, 10.0}) {
      Region1Solution sol;
      try {
        sol = region1_exact(mu_g, x2, 0);
      } catch (const Error&) {
        continue;
      }
      if (sol.mu > 1.2 * purity_floor(mu_g)) continue;
      const auto rho = region1_state(mu_g, x2, 0);
      GridSpec grid = suggest_grid(rho);
      const WignerMin coarse = min_wigner(rho, grid);
      grid.x_steps = 2 * grid.x_steps - 1;
      grid.p_steps = 2 * grid.p_steps - 1;
      const WignerMin fine = min_wigner(rho, grid);
      ok = ok && coarse.nonnegative && fine.nonnegative;
      stable = stable && (coarse.nonnegative == fine.nonnegative ||
                          std::abs(coarse.value + tol::wigner_positive) < 1e-7);
      worst_flip_margin =
          std::min(worst_flip_margin, std::abs(coarse.value - fine.value));
      ++checked;
    }
  }
  ok = ok && stable && checked >= 6;
  report(10, "positivity program (floor states positive, Fock states negative)",
         ok, num(checked) + " floor states");
}

// 11. Wigner self-consistency for generated extremal states
void criterion_11() {
  double worst = 0.0;
  int states = 0;
  auto check = [&](const FockDensityMatrix& rho) {
    if (rho.dim() > 32) return;
    const GridSpec grid = suggest_grid(rho);
    const RealMatrix w = wigner_eval(rho, grid);
    worst = std::max(worst, std::abs(2.0 * M_PI * integrate(w, grid) - 1.0));
    worst = std::max(worst, std::abs(overlap_quadrature(w, grid, w, grid) -
                                     purity(rho)));
    ++states;
  };

  for (double mu_g : {0.1, 0.3, 0.6}) {
    for (double x2 : {4.0, 9.5, 21.0}) {
      try {
        check(region1_state(mu_g, x2, 0));
      } catch (const Error&) {
      }
    }
  }
  for (int n : {0, 5, 21}) {
    RealVector w = RealVector::Zero(n + 4);
    w(n) = 0.4;
    w(n + 1) = 0.6;
    check(FockDensityMatrix::from_diagonal(w));
  }
  check(pure_min_overlap(0.09).minimizer.state);   // deep-segment psi pair
  check(pure_min_overlap(0.5).minimizer.state);    // beta
  check(mixed_family(3, 2, 0.7, 0.3).state);
  check(assy_family(1, 0.6, Complex(0.25, 0.3)).state);

  report(11, "Wigner normalization and purity quadrature", worst < 1e-6,
         num(states) + " states, worst defect " + num(worst));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
