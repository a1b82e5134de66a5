#include "eigenbound/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eigenbound/analytic_spectra.hpp"
#include "eigenbound/fem_oracle.hpp"
#include "eigenbound/mesh_geometry.hpp"

namespace eigenbound::harness {

using nlohmann::json;

const char* tool_version() { return "0.1.0"; }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::parse_error, std::string("scenario JSON: ") + e.what());
  }

  Scenario sc;
  try {
    sc.name = j.at("name").get<std::string>();
    sc.geometry = j.at("geometry").get<GeometrySpec>();
    sc.op = operator_from_name(j.at("operator").get<std::string>());
    const std::string src = j.at("spectrum_source").get<std::string>();
    if (src == "analytic")
      sc.source = SpectrumSource::analytic;
    else if (src == "fem")
      sc.source = SpectrumSource::fem;
    else if (src == "fd")
      sc.source = SpectrumSource::fd;
    else if (src == "file")
      sc.source = SpectrumSource::file;
    else
      fail(ErrorCode::parse_error, "unknown spectrum_source: " + src);
    if (sc.source == SpectrumSource::file) sc.spectrum_file = j.at("spectrum_file").get<std::string>();
    sc.count = j.at("count").get<int>();
    if (j.contains("grid_h")) sc.grid_h = j.at("grid_h").get<double>();
    for (const auto& name : j.at("inequalities"))
      sc.inequalities.push_back(inequality_from_name(name.get<std::string>()));
    const auto kr = j.at("k_range");
    sc.k_lo = kr.at(0).get<int>();
    sc.k_hi = kr.at(1).get<int>();
    if (j.contains("sobolev")) sc.sobolev = j.at("sobolev").get<SobolevConfig>();
    sc.output = j.at("output").get<std::string>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::parse_error, std::string("scenario JSON: ") + e.what());
  }

  if (sc.k_lo < 1 || sc.k_hi < sc.k_lo) fail(ErrorCode::invalid_config, "bad k_range");
  if (sc.count < sc.k_hi + 1)
    fail(ErrorCode::invalid_config, "count must be at least max(k_range)+1 for check mode");
  if (sc.inequalities.empty()) fail(ErrorCode::invalid_config, "no inequalities listed");

  // input files resolve against the scenario's own directory
  const auto base = std::filesystem::path(path).parent_path();
  auto rebase = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
  };
  rebase(sc.spectrum_file);
  if (auto* m = std::get_if<MeshGeometry>(&sc.geometry.shape)) rebase(m->path);
  return sc;
}

Spectrum compute_spectrum(const Scenario& sc) {
  const auto& g = sc.geometry;
  switch (sc.source) {
    case SpectrumSource::analytic: {
      if (const auto* b = std::get_if<BoxGeometry>(&g.shape)) {
        if (sc.op != Operator::laplacian)
          fail(ErrorCode::unsupported_geometry,
               "no analytic plate spectrum on boxes; use spectrum_source fd");
        return spectra::box_dirichlet_spectrum(b->lengths, sc.count);
      }
      if (const auto* b = std::get_if<BallGeometry>(&g.shape)) {
        return sc.op == Operator::laplacian
                   ? spectra::ball_dirichlet_spectrum(b->dim, b->radius, sc.count)
                   : spectra::ball_plate_spectrum(b->dim, b->radius, sc.count);
      }
      if (const auto* c = std::get_if<CapGeometry>(&g.shape)) {
        if (sc.op != Operator::laplacian)
          fail(ErrorCode::unsupported_geometry, "cap spectra exist for the Laplacian only");
        return spectra::cap_dirichlet_spectrum(c->sphere_dim, c->sphere_radius, c->cap_angle,
                                               sc.count);
      }
      fail(ErrorCode::unsupported_geometry,
           "analytic spectra exist for box, ball and cap geometries");
    }
    case SpectrumSource::fem: {
      const auto* m = std::get_if<MeshGeometry>(&g.shape);
      if (m == nullptr)
        fail(ErrorCode::unsupported_geometry,
             "fem source needs a mesh geometry; generate one with gen-mesh");
      if (sc.op != Operator::laplacian)
        fail(ErrorCode::unsupported_geometry, "fem source provides Dirichlet spectra only");
      const auto mesh = geom::load_mesh(m->path, m->intrinsic_dim);
      return fem::fem_dirichlet_eigs(mesh, sc.count).spectrum;
    }
    case SpectrumSource::fd: {
      if (sc.op != Operator::bilaplacian)
        fail(ErrorCode::unsupported_geometry, "fd source provides clamped-plate spectra only");
      fem::PlateDomain dom;
      if (const auto* b = std::get_if<BoxGeometry>(&g.shape)) {
        dom.kind = fem::PlateDomain::Kind::box;
        dom.lengths = b->lengths;
        const double shortest = *std::min_element(b->lengths.begin(), b->lengths.end());
        return fem::fd_plate_eigs(dom, sc.grid_h.value_or(shortest / 16.0), sc.count).spectrum;
      }
      if (const auto* b = std::get_if<BallGeometry>(&g.shape)) {
        if (b->dim != 2)
          fail(ErrorCode::unsupported_geometry, "fd disk solver is two-dimensional");
        dom.kind = fem::PlateDomain::Kind::disk;
        dom.radius = b->radius;
        return fem::fd_plate_eigs(dom, sc.grid_h.value_or(b->radius / 10.0), sc.count).spectrum;
      }
      fail(ErrorCode::unsupported_geometry, "fd source covers boxes and disks");
    }
    case SpectrumSource::file: {
      std::ifstream in(sc.spectrum_file);
      if (!in) fail(ErrorCode::io_error, "cannot open spectrum file: " + sc.spectrum_file);
      json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        fail(ErrorCode::parse_error, std::string("spectrum JSON: ") + e.what());
      }
      Spectrum s = j.get<Spectrum>();
      validate_spectrum(s);
      if (s.op != sc.op)
        fail(ErrorCode::operator_mismatch, "spectrum file operator does not match the scenario");
      if ((int)s.values.size() < sc.count)
        fail(ErrorCode::insufficient_spectrum, "spectrum file has fewer values than count");
      return s;
    }
  }
  fail(ErrorCode::invalid_config, "unreachable spectrum source");
}

CurvatureSummary compute_curvature(const GeometrySpec& geometry) {
  if (const auto* m = std::get_if<MeshGeometry>(&geometry.shape)) {
    const auto mesh = geom::load_mesh(m->path, m->intrinsic_dim);
    const auto ops = geom::assemble_operators(mesh);
    return geom::discrete_mean_curvature(mesh, ops).summary;
  }
  return geom::curvature_summary_analytic(geometry);
}

bool geometry_is_flat(const GeometrySpec& geometry, const CurvatureSummary& curv) {
  if (std::holds_alternative<BoxGeometry>(geometry.shape) ||
      std::holds_alternative<BallGeometry>(geometry.shape))
    return true;
  if (std::holds_alternative<CapGeometry>(geometry.shape)) return false;
  return curv.h_sup < 1e-6;  // measured flatness of a mesh immersion
}

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string csv_number(double x) { return json(x).dump(); }

void write_outputs(const Scenario& sc, const json& provenance_core,
                   const std::vector<BoundReport>& reports, RunResult& result) {
  const std::filesystem::path base(sc.output);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());

  json body;
  body["provenance"] = provenance_core;
  body["reports"] = reports;
  const std::string hash = fnv1a_hex(body.dump());
  body["provenance"]["hash"] = hash;
  body["provenance"]["timestamp"] = iso_timestamp();

  result.json_path = base.string() + ".json";
  result.csv_path = base.string() + ".csv";
  {
    std::ofstream out(result.json_path);
    if (!out) fail(ErrorCode::io_error, "cannot write report: " + result.json_path);
    out << body.dump(2) << "\n";
  }
  {
    std::ofstream out(result.csv_path);
    if (!out) fail(ErrorCode::io_error, "cannot write report: " + result.csv_path);
    out << "scenario,inequality,k,lhs,rhs,holds,tightness,implied_bound\n";
    for (const auto& r : reports) {
      out << sc.name << "," << inequality_name(r.id) << "," << r.k << "," << csv_number(r.lhs)
          << "," << csv_number(r.rhs) << "," << (r.holds ? "true" : "false") << ","
          << (r.tightness ? csv_number(*r.tightness) : "") << ","
          << (r.implied_bound ? csv_number(*r.implied_bound) : "") << "\n";
    }
  }
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
  RunResult result;
  try {
    const Spectrum spectrum = compute_spectrum(sc);
    const CurvatureSummary curv = compute_curvature(sc.geometry);
    const bool flat = geometry_is_flat(sc.geometry, curv);
    const sobolev::DerivedConstants constants =
        sobolev::resolve_constants(sc.sobolev, curv, spectrum.dim_n, flat);

    bounds::EvalContext ctx{&curv, &constants};
    std::vector<BoundReport> reports;
    for (InequalityId id : sc.inequalities)
      for (int k = sc.k_lo; k <= sc.k_hi; ++k) reports.push_back(bounds::check(id, spectrum, k, ctx));

    std::sort(reports.begin(), reports.end(), [](const BoundReport& a, const BoundReport& b) {
      const int c = std::strcmp(inequality_name(a.id), inequality_name(b.id));
      if (c != 0) return c < 0;
      return a.k < b.k;
    });

    json prov;
    prov["tool"] = "eigenbound";
    prov["version"] = tool_version();
    prov["scenario"] = sc.name;
    prov["geometry"] = sc.geometry;
    prov["geometry_hash"] = fnv1a_hex(json(sc.geometry).dump());
    prov["spectrum_source"] = spectrum.source;
    prov["curvature"] = curv;
    json cst = json::object();
    if (constants.c1_effective) cst["c1_effective"] = *constants.c1_effective;
    if (constants.c2) cst["c2"] = *constants.c2;
    if (constants.cs) cst["cs"] = *constants.cs;
    cst["gate_ok"] = constants.gate_ok;
    cst["provenance"] = constants.provenance;
    prov["constants"] = cst;

    write_outputs(sc, prov, reports, result);
    result.reports = reports;

    const bool all_hold =
        std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.holds; });
    result.exit_code = all_hold ? 0 : 2;
  } catch (const Error& e) {
    result.exit_code = 1;
    result.error_code = e.code_name();
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.error_code = "internal_error";
    result.message = e.what();
  }
  return result;
}

RunResult run_scenario_file(const std::string& path) {
  try {
    return run_scenario(parse_scenario(path));
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = 1;
    r.error_code = e.code_name();
    r.message = e.what();
    return r;
  }
}

}  // namespace eigenbound::harness
