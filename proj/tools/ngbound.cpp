// ngbound — command-line surface over the bound library: figure data,
// state checks, verification suites.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ngb/io.hpp"
#include "ngb/oracle.hpp"

namespace {

using namespace ngb;

constexpr int kExitBadPath = 2;
constexpr int kExitViolation = 3;
constexpr int kExitBadState = 4;
constexpr int kExitVerifyFailed = 5;

struct OutputTarget {
  std::string path;
  std::string format = "csv";  // csv | json
};

void add_output_flags(CLI::App* cmd, OutputTarget* out) {
  cmd->add_option("--out", out->path, "output file path")->required();
  cmd->add_option("--format", out->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int write_output(const OutputTarget& out, const std::string& csv,
                 const Json& json, const Json& config) {
  try {
    write_text(out.path, out.format == "csv" ? csv : json.dump(2) + "\n");
    write_manifest(out.path, config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadPath;
  }
  return 0;
}

int cmd_purity_bound(int samples, double y_max, const OutputTarget& out) {
  std::ostringstream csv;
  csv << "y,mu_g,mu\n" << std::setprecision(17);
  Json rows = Json::array();
  for (int i = 0; i < samples; ++i) {
    const double y = 1.0 + (y_max - 1.0) * i / std::max(1, samples - 1);
    const auto [mu_g, mu] = purity_bound_curve(y);
    csv << y << ',' << mu_g << ',' << mu << "\n";
    rows.push_back(Json{{"y", y}, {"mu_g", mu_g}, {"mu", mu}});
  }
  const Json config{{"command", "purity-bound"},
                    {"samples", samples},
                    {"y_max", y_max},
                    {"out", out.path},
                    {"format", out.format}};
  return write_output(out, csv.str(), rows, config);
}

int cmd_surface(const SurfaceSpec& spec, const OutputTarget& out) {
  const BoundSurface surface = total_bound(spec);
  Json json{{"points", surface_to_json(surface.points)},
            {"boundary", surface_to_json(surface.boundary)},
            {"cells", surface.cells},
            {"skipped", surface.skipped},
            {"region_i", surface.region_i},
            {"region_ii", surface.region_ii}};
  const Json config{{"command", "surface"},
                    {"mug_steps", spec.mu_g_steps},
                    {"mu_steps", spec.mu_steps},
                    {"mug_min", spec.mu_g_min},
                    {"mug_max", spec.mu_g_max},
                    {"mu_min", spec.mu_min},
                    {"mu_max", spec.mu_max},
                    {"out", out.path},
                    {"format", out.format}};
  const int rc = write_output(out, surface_to_csv(surface.points), json, config);
  if (rc == 0)
    std::cout << "cells " << surface.cells << ", skipped " << surface.skipped
              << ", region I " << surface.region_i << ", region II "
              << surface.region_ii << "\n";
  return rc;
}

int cmd_pure(int samples, double mu_g_min, const OutputTarget& out) {
  std::ostringstream csv;
  csv << "mu_g,overlap,delta,family,n,param1,number_state,switch\n"
      << std::setprecision(17);
  Json rows = Json::array();
  Family prev_family = Family::kPsiA;
  int prev_n = -1;
  for (int i = 0; i < samples; ++i) {
    const double mu_g =
        mu_g_min + (1.0 - mu_g_min) * i / std::max(1, samples - 1);
    const PureMinPoint pt = pure_min_overlap(mu_g);
    const double delta = non_gaussianity(1.0, mu_g, pt.overlap);
    // number states sit at mu_G = 1/(2n+1)
    const double inv = 1.0 / mu_g;
    const bool number_state =
        std::abs(inv - std::round(inv)) < 1e-9 &&
        (static_cast<long>(std::round(inv)) % 2) == 1;
    const bool switched =
        i > 0 && (pt.minimizer.family != prev_family || pt.minimizer.n != prev_n);
    prev_family = pt.minimizer.family;
    prev_n = pt.minimizer.n;
    csv << mu_g << ',' << pt.overlap << ',' << delta << ','
        << to_string(pt.minimizer.family) << ',' << pt.minimizer.n << ','
        << pt.minimizer.param1 << ',' << (number_state ? 1 : 0) << ','
        << (switched ? 1 : 0) << "\n";
    rows.push_back(Json{{"mu_g", mu_g},
                        {"overlap", pt.overlap},
                        {"delta", delta},
                        {"family", to_string(pt.minimizer.family)},
                        {"n", pt.minimizer.n},
                        {"param1", pt.minimizer.param1},
                        {"number_state", number_state},
                        {"switch", switched}});
  }
  const Json config{{"command", "pure"},
                    {"samples", samples},
                    {"mug_min", mu_g_min},
                    {"out", out.path},
                    {"format", out.format}};
  return write_output(out, csv.str(), rows, config);
}

int cmd_check(const std::string& state_path, int cutoff, int grid_steps) {
  FockDensityMatrix rho = FockDensityMatrix::from_diagonal(
      RealVector::Ones(1));
  try {
    rho = load_state(state_path);
    const ValidationReport report = validate(rho);
    if (!report.hermitian() || !report.positive() || !report.unit_trace()) {
      std::cerr << "invalid state: hermiticity defect "
                << report.hermiticity_defect << ", min eigenvalue "
                << report.min_eigenvalue << ", trace defect "
                << report.trace_defect << "\n";
      return kExitBadState;
    }
  } catch (const Error& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return kExitBadState;
  }
  (void)cutoff;

  const StateSummary s = summarize(rho);
  std::cout << summary_to_json(s).dump(2) << "\n";

  const auto bound = surface_min_overlap(s.mu_g, std::min(1.0, s.mu));
  double margin = 0.0;
  if (bound) {
    margin = s.overlap - bound->overlap;
    std::cout << "bound overlap " << bound->overlap << " (family "
              << to_string(bound->family) << "), margin " << margin << "\n";
  } else {
    std::cout << "bound: cell unreachable at (mu_g, mu) = (" << s.mu_g << ", "
              << s.mu << ")\n";
  }

  GridSpec grid = suggest_grid(rho);
  if (grid_steps > 0) grid.x_steps = grid.p_steps = grid_steps;
  const WignerMin wm = min_wigner(rho, grid);
  std::cout << "wigner minimum " << wm.value << " at (" << wm.location[0]
            << ", " << wm.location[1] << "): "
            << (wm.nonnegative ? "nonnegative" : "negative") << "\n";

  return margin < -tol::violation ? kExitViolation : 0;
}

OracleReport verify_region1(std::uint64_t seed) {
  // QP oracle vs the parametric bound on a feasible (mu_G, T) grid
  OracleReport report;
  report.scenario = "region1_qp";
  report.seed = seed;
  double worst = 0.0;
  int trials = 0;
  for (int i = 0; i < 20; ++i) {
    const double mu_g = 0.15 + (0.85 - 0.15) * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double x2 = 2.05 + (8.0 - 2.05) * j / 19.0;
      try {
        const Region1Solution sol = region1_exact(mu_g, x2, 0);
        const double qp = min_purity_qp(mu_g, sol.overlap, 24);
        worst = std::max(worst, std::abs(qp - sol.mu));
        ++trials;
      } catch (const InfeasibleRegion&) {
      }
    }
  }
  report.trials = trials;
  report.worst_margin = -worst;  // clean iff max deviation <= tol::violation
  return report;
}

OracleReport verify_region2(std::uint64_t seed) {
  OracleReport report;
  report.scenario = "region2_search";
  report.seed = seed;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double mu_g = 0.06 + (0.97 - 0.06) * i / 49.0;
    const double closed = pure_min_overlap(mu_g).overlap;
    const double searched = pure_min_overlap_search(mu_g, 30);
    // the independent search must never undercut the closed form
    worst = std::max(worst, closed - searched);
    ++report.trials;
  }
  report.worst_margin = -worst;
  return report;
}

OracleReport verify_positivity(std::uint64_t) {
  OracleReport report;
  report.scenario = "positivity";
  SurfaceSpec spec;
  spec.mu_g_steps = 12;
  spec.mu_steps = 12;
  const BoundSurface surface = total_bound(spec);
  const auto scan = positivity_scan(surface);
  // low-purity region-I minimizers must classify nonnegative
  double worst = 0.0;
  for (const auto& pp : scan) {
    ++report.trials;
    if (pp.point.region == Region::kI &&
        pp.point.mu <= 1.1 * purity_floor(pp.point.mu_g))
      worst = std::min(worst, pp.min_wigner + tol::wigner_positive);
  }
  report.worst_margin = worst;
  return report;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
  std::vector<OracleReport> reports;
  if (suite == "all" || suite == "lemma")
    reports.push_back(lemma_suite(100, 24, seed));
  if (suite == "all" || suite == "region1")
    reports.push_back(verify_region1(seed));
  if (suite == "all" || suite == "region2") {
    reports.push_back(verify_region2(seed));
    Rank3Spec spec;
    spec.seed = seed;
    reports.push_back(rank3_spot_check(spec));
  }
  if (suite == "all" || suite == "sampling")
    reports.push_back(sample_and_check(2000, 20, seed));
  if (suite == "all" || suite == "positivity")
    reports.push_back(verify_positivity(seed));
  if (reports.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return 1;
  }

  Json arr = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    std::cout << r.scenario << ": trials " << r.trials << ", worst margin "
              << r.worst_margin << (r.clean() ? " [ok]" : " [VIOLATION]")
              << "\n";
    ok = ok && r.clean();
  }
  if (!out_path.empty()) {
    try {
      write_text(out_path, arr.dump(2) + "\n");
      write_manifest(out_path, Json{{"command", "verify"},
                                    {"suite", suite},
                                    {"seed", seed}});
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadPath;
    }
  }
  return ok ? 0 : kExitVerifyFailed;
}

int cmd_wigner(const std::string& state_path, const OutputTarget& out,
               int steps, double extent) {
  FockDensityMatrix rho = FockDensityMatrix::from_diagonal(RealVector::Ones(1));
  try {
    rho = load_state(state_path);
  } catch (const Error& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return kExitBadState;
  }
  GridSpec grid = suggest_grid(rho);
  if (extent > 0.0) {
    grid.x_min = grid.p_min = -extent;
    grid.x_max = grid.p_max = extent;
  }
  if (steps > 0) grid.x_steps = grid.p_steps = steps;
  const WignerGrid wg = wigner_grid(rho, grid);
  const Json config{{"command", "wigner"}, {"state", state_path},
                    {"steps", grid.x_steps}, {"extent", grid.x_max},
                    {"out", out.path},       {"format", out.format}};
  return write_output(out, wigner_to_csv(wg), wigner_to_json(wg), config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Gaussianity bounded uncertainty relation toolkit"};
  app.require_subcommand(1);

  // purity-bound
  int pb_samples = 1000;
  double pb_ymax = 1000.0;
  OutputTarget pb_out;
  auto* pb = app.add_subcommand("purity-bound",
                                "sample the purity-bounded floor curve");
  pb->add_option("--samples", pb_samples, "number of samples");
  pb->add_option("--y-max", pb_ymax, "upper end of the curve parameter");
  add_output_flags(pb, &pb_out);

  // surface
  SurfaceSpec spec;
  OutputTarget surf_out;
  auto* surf = app.add_subcommand("surface", "compute the total bound surface");
  surf->add_option("--mug-steps", spec.mu_g_steps, "grid steps in mu_G");
  surf->add_option("--mu-steps", spec.mu_steps, "grid steps in mu");
  surf->add_option("--mug-min", spec.mu_g_min, "mu_G lower end");
  surf->add_option("--mug-max", spec.mu_g_max, "mu_G upper end");
  surf->add_option("--mu-min", spec.mu_min, "mu lower end");
  surf->add_option("--mu-max", spec.mu_max, "mu upper end");
  add_output_flags(surf, &surf_out);

  // pure
  int pure_samples = 400;
  double pure_mug_min = 0.05;
  OutputTarget pure_out;
  auto* pure = app.add_subcommand("pure", "pure-state minimum overlap curve");
  pure->add_option("--samples", pure_samples, "number of samples");
  pure->add_option("--mug-min", pure_mug_min, "mu_G lower end");
  add_output_flags(pure, &pure_out);

  // check
  std::string check_state;
  int check_cutoff = 64, check_grid = 0;
  auto* check = app.add_subcommand("check", "classify a state against the bound");
  check->add_option("--state", check_state, "state JSON file")->required();
  check->add_option("--cutoff", check_cutoff, "Fock cutoff");
  check->add_option("--grid", check_grid, "Wigner grid steps");

  // verify
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->add_option("--suite", suite,
                     "all|region1|region2|lemma|sampling|positivity");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--out", verify_out, "report JSON path");

  // wigner
  std::string wig_state;
  int wig_steps = 0;
  double wig_extent = 0.0;
  OutputTarget wig_out;
  auto* wig = app.add_subcommand("wigner", "evaluate a Wigner function grid");
  wig->add_option("--state", wig_state, "state JSON file")->required();
  wig->add_option("--steps", wig_steps, "grid steps per axis");
  wig->add_option("--extent", wig_extent, "half-width of the grid");
  add_output_flags(wig, &wig_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (pb->parsed()) return cmd_purity_bound(pb_samples, pb_ymax, pb_out);
    if (surf->parsed()) return cmd_surface(spec, surf_out);
    if (pure->parsed()) return cmd_pure(pure_samples, pure_mug_min, pure_out);
    if (check->parsed()) return cmd_check(check_state, check_cutoff, check_grid);
    if (verify->parsed()) return cmd_verify(suite, seed, verify_out);
    if (wig->parsed()) return cmd_wigner(wig_state, wig_out, wig_steps, wig_extent);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
