#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"
#include "ngb/metrics.hpp"
#include "ngb/region2.hpp"

namespace ngb {

struct OracleReport {
  std::string scenario;
  int trials = 0;
  double worst_margin = 0.0;  // signed distance to the bound; < 0 = violation
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
  struct Offender {
    FockDensityMatrix state;
    StateSummary summary;
  };
  std::optional<Offender> offender;  // worst case, present when margin < 0

  bool clean() const { return worst_margin >= -tol::violation; }
};

/// Independent minimum-purity solver: minimize sum p_n^2 subject to
/// normalization, the covariance constraint and the fixed thermal overlap,
/// p >= 0, by exact enumeration of active supports (all contiguous windows
/// plus every subset of size <= 4 as an independence safeguard). Throws
/// InfeasibleRegion when no nonnegative basic solution exists; the
/// enumeration of size-<=3 supports is itself the LP feasibility certificate.
double min_purity_qp(double mu_g, double overlap, int max_level = 40);

/// Random-state no-violation sampling: `count` diagonal states plus
/// `count`/10 random rank-1..4 mixtures at the given cutoff, each summarized
/// and compared against the bound surface evaluated at its (mu_G, mu).
OracleReport sample_and_check(int count, int dim, std::uint64_t seed);

/// Independent pure-state search: the overlap minimum over two-level
/// superpositions with support gap >= 3 (all pairs), spot-checking that
/// gap-4+ and three-term candidates never go lower.
double pure_min_overlap_search(double mu_g, int max_level = 40);

struct Rank3Spec {
  int n_max = 2;
  int m_max = 8;
  int amp_steps = 7;
  int p_steps = 7;
  std::uint64_t seed = 0;
};

/// Verifies that rank-3 candidates rho_i + |m><m| never undercut the
/// region-II surface.
OracleReport rank3_spot_check(const Rank3Spec& spec);

struct PositivityPoint {
  BoundPoint point;
  double min_wigner = 0.0;
  bool nonnegative = false;
};

/// Wigner-positivity classification of the realizing state of every bound
/// point (the paper's shaded-region dataset).
std::vector<PositivityPoint> positivity_scan(const BoundSurface& surface);

/// Phase-averaging monotonicity suite: random symmetric-class states, check
/// mu never increases while mu_G and T are preserved.
OracleReport lemma_suite(int count, int dim, std::uint64_t seed);

}  // namespace ngb
