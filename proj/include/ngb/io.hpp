#pragma once

#include <string>
#include <vector>

#include "ngb/common.hpp"
#include "ngb/fock.hpp"
#include "ngb/metrics.hpp"
#include "ngb/oracle.hpp"
#include "ngb/region1.hpp"
#include "ngb/region2.hpp"
#include "ngb/wigner.hpp"

#include "json.hpp"

namespace ngb {

using Json = nlohmann::json;

/// State JSON: {"dim": d, "diagonal": [w...]} or {"dim": d,
/// "pure": [[re,im]...]} or {"dim": d, "matrix": [[[re,im]...]...]}
/// (row-major). Exactly one of the three keys must be present; arrays may be
/// shorter than dim and are zero-padded.
FockDensityMatrix state_from_json(const Json& j);
FockDensityMatrix load_state(const std::string& path);
Json state_to_json(const FockDensityMatrix& rho);

Json summary_to_json(const StateSummary& s);

Json bound_point_to_json(const BoundPoint& pt);

/// Region-1 sweep rows: mu_g, mu, overlap, delta, region, family, rank,
/// n_min, x2.
std::string sweep_to_csv(const std::vector<BoundPoint>& points);
Json sweep_to_json(const std::vector<BoundPoint>& points);

/// Surface rows: mu_g, mu, overlap, delta, region, family, rank, n, param1,
/// param2.
std::string surface_to_csv(const std::vector<BoundPoint>& points);
Json surface_to_json(const std::vector<BoundPoint>& points);

std::string wigner_to_csv(const WignerGrid& grid);
Json wigner_to_json(const WignerGrid& grid);

Json report_to_json(const OracleReport& report);

void write_text(const std::string& path, const std::string& text);

/// Every CLI run drops a <out>.manifest.json next to its output: the full
/// config echo plus the library version.
void write_manifest(const std::string& out_path, const Json& config);

}  // namespace ngb
