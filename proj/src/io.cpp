#include "ngb/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace ngb {

namespace {

Complex parse_complex(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw InvalidInput("state json: complex entries must be [re, im]");
}

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

FockDensityMatrix state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim"))
    throw InvalidInput("state json: missing \"dim\"");
  const int dim = j.at("dim").get<int>();
  if (dim < 1 || dim > kMaxWignerLevel + 1)
    throw InvalidInput("state json: dim out of range");
  const int keys = int(j.contains("diagonal")) + int(j.contains("pure")) +
                   int(j.contains("matrix"));
  if (keys != 1)
    throw InvalidInput(
        "state json: exactly one of diagonal/pure/matrix required");

  if (j.contains("diagonal")) {
    const auto& arr = j.at("diagonal");
    if (!arr.is_array() || arr.size() > size_t(dim))
      throw InvalidInput("state json: diagonal array longer than dim");
    RealVector w = RealVector::Zero(dim);
    for (size_t n = 0; n < arr.size(); ++n) w(n) = arr[n].get<double>();
    return FockDensityMatrix::from_diagonal(w);
  }
  if (j.contains("pure")) {
    const auto& arr = j.at("pure");
    if (!arr.is_array() || arr.size() > size_t(dim))
      throw InvalidInput("state json: pure array longer than dim");
    ComplexVector psi = ComplexVector::Zero(dim);
    for (size_t n = 0; n < arr.size(); ++n) psi(n) = parse_complex(arr[n]);
    return FockDensityMatrix::from_pure(psi);
  }
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() > size_t(dim))
    throw InvalidInput("state json: matrix larger than dim");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() > size_t(dim))
      throw InvalidInput("state json: matrix row larger than dim");
    for (size_t c = 0; c < rows[r].size(); ++c)
      m(r, c) = parse_complex(rows[r][c]);
  }
  return FockDensityMatrix::from_matrix(std::move(m));
}

FockDensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("state json parse error: ") + e.what());
  }
  return state_from_json(j);
}

Json state_to_json(const FockDensityMatrix& rho) {
  Json rows = Json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", rho.dim()}, {"matrix", std::move(rows)}};
}

Json summary_to_json(const StateSummary& s) {
  return Json{
      {"mu", s.mu},
      {"mu_g", s.mu_g},
      {"overlap", s.overlap},
      {"delta", s.delta},
      {"gamma", {{s.gamma(0, 0), s.gamma(0, 1)}, {s.gamma(1, 0), s.gamma(1, 1)}}},
      {"d", {s.d[0], s.d[1]}},
      {"method",
       s.method == StateSummary::Method::kThermal ? "thermal" : "quadrature"},
  };
}

Json bound_point_to_json(const BoundPoint& pt) {
  return Json{
      {"mu_g", pt.mu_g},       {"mu", pt.mu},
      {"overlap", pt.overlap}, {"delta", pt.delta},
      {"region", to_string(pt.region)}, {"family", to_string(pt.family)},
      {"rank", pt.rank},       {"n", pt.n},
      {"param1", pt.param1},   {"param2", pt.param2},
  };
}

namespace {

std::string points_to_csv(const std::vector<BoundPoint>& points,
                          const char* header, bool sweep_layout) {
  std::ostringstream out;
  out << header << "\n";
  out << std::setprecision(17);
  for (const auto& pt : points) {
    out << pt.mu_g << ',' << pt.mu << ',' << pt.overlap << ',' << pt.delta
        << ',' << to_string(pt.region) << ',' << to_string(pt.family) << ','
        << pt.rank << ',' << pt.n << ',' << pt.param1;
    if (!sweep_layout) out << ',' << pt.param2;
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string sweep_to_csv(const std::vector<BoundPoint>& points) {
  return points_to_csv(points,
                       "mu_g,mu,overlap,delta,region,family,rank,n_min,x2",
                       true);
}

Json sweep_to_json(const std::vector<BoundPoint>& points) {
  Json arr = Json::array();
  for (const auto& pt : points) arr.push_back(bound_point_to_json(pt));
  return arr;
}

std::string surface_to_csv(const std::vector<BoundPoint>& points) {
  return points_to_csv(
      points, "mu_g,mu,overlap,delta,region,family,rank,n,param1,param2",
      false);
}

Json surface_to_json(const std::vector<BoundPoint>& points) {
  return sweep_to_json(points);
}

std::string wigner_to_csv(const WignerGrid& grid) {
  std::ostringstream out;
  out << "x,p,w\n" << std::setprecision(17);
  for (int i = 0; i < grid.spec.x_steps; ++i)
    for (int j = 0; j < grid.spec.p_steps; ++j)
      out << grid.spec.x(i) << ',' << grid.spec.p(j) << ','
          << grid.values(i, j) << "\n";
  return out.str();
}

Json wigner_to_json(const WignerGrid& grid) {
  Json values = Json::array();
  for (int i = 0; i < grid.spec.x_steps; ++i) {
    Json row = Json::array();
    for (int j = 0; j < grid.spec.p_steps; ++j) row.push_back(grid.values(i, j));
    values.push_back(std::move(row));
  }
  return Json{
      {"x_min", grid.spec.x_min},   {"x_max", grid.spec.x_max},
      {"p_min", grid.spec.p_min},   {"p_max", grid.spec.p_max},
      {"x_steps", grid.spec.x_steps}, {"p_steps", grid.spec.p_steps},
      {"min_value", grid.min_value},
      {"min_location", {grid.min_location[0], grid.min_location[1]}},
      {"values", std::move(values)},
  };
}

Json report_to_json(const OracleReport& report) {
  Json j{
      {"scenario", report.scenario},
      {"trials", report.trials},
      {"worst_margin", report.worst_margin},
      {"seed", report.seed},
      {"runtime_seconds", report.runtime_seconds},
  };
  if (report.offender) {
    j["offender"] = Json{{"state", state_to_json(report.offender->state)},
                         {"summary", summary_to_json(report.offender->summary)}};
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

void write_manifest(const std::string& out_path, const Json& config) {
  Json manifest{{"version", kVersion}, {"config", config}};
  write_text(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace ngb
