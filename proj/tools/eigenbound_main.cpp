// eigenbound: spectral-geometry verification harness.
//
// Subcommands: spectrum, curvature, bound, suite, gen-mesh. JSON on stdout,
// stable error codes on stderr; exit 0 on success, 2 on violated inequality,
// 1 on errors, 64 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "eigenbound/analytic_spectra.hpp"
#include "eigenbound/bounds.hpp"
#include "eigenbound/fem_oracle.hpp"
#include "eigenbound/mesh_geometry.hpp"
#include "eigenbound/scenario.hpp"
#include "eigenbound/sobolev.hpp"
#include "eigenbound/types.hpp"

using nlohmann::json;
using namespace eigenbound;

namespace {

struct GeometryFlags {
  std::string kind;  // box | ball | cap
  std::vector<double> lengths;
  int n = 3;
  double radius = 1.0;
  double angle = 1.0;
};

GeometrySpec geometry_from_flags(const GeometryFlags& g) {
  if (g.kind == "box") {
    if (g.lengths.empty()) fail(ErrorCode::invalid_config, "box needs --lengths");
    return GeometrySpec{BoxGeometry{g.lengths}};
  }
  if (g.kind == "ball") return GeometrySpec{BallGeometry{g.n, g.radius}};
  if (g.kind == "cap") return GeometrySpec{CapGeometry{g.n, g.radius, g.angle}};
  fail(ErrorCode::invalid_config, "geometry must be box, ball or cap");
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + out_path);
  out << j.dump(2) << "\n";
}

int report_error(const Error& e) {
  json j{{"error", e.code_name()}, {"message", e.what()}};
  std::cerr << j.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  // reserved for future stochastic mesh perturbation tests; deterministic
  // paths ignore it
  const char* seed = std::getenv("EIGENBOUND_SEED");
  (void)seed;

  CLI::App app{"eigenbound: eigenvalue inequality verification harness"};
  app.require_subcommand(1);

  // --- spectrum ---------------------------------------------------------
  auto* sp = app.add_subcommand("spectrum", "print an analytic spectrum as JSON");
  GeometryFlags sp_geom;
  int sp_count = 10;
  std::string sp_operator = "laplacian";
  std::string sp_out;
  sp->add_option("kind", sp_geom.kind, "box | ball | cap")->required();
  sp->add_option("--lengths", sp_geom.lengths, "box side lengths");
  sp->add_option("--n", sp_geom.n, "dimension");
  sp->add_option("--radius", sp_geom.radius, "ball or sphere radius");
  sp->add_option("--angle", sp_geom.angle, "cap opening angle");
  sp->add_option("--count", sp_count, "number of eigenvalues");
  sp->add_option("--operator", sp_operator, "laplacian | bilaplacian");
  sp->add_option("-o,--output", sp_out, "write JSON here instead of stdout");

  // --- curvature --------------------------------------------------------
  auto* cv = app.add_subcommand("curvature", "print a curvature summary as JSON");
  GeometryFlags cv_geom;
  std::string cv_mesh;
  int cv_dim = 2;
  std::string cv_out;
  cv->add_option("--geometry", cv_geom.kind, "box | ball | cap");
  cv->add_option("--lengths", cv_geom.lengths, "box side lengths");
  cv->add_option("--n", cv_geom.n, "dimension");
  cv->add_option("--radius", cv_geom.radius, "ball or sphere radius");
  cv->add_option("--angle", cv_geom.angle, "cap opening angle");
  cv->add_option("--mesh", cv_mesh, "mesh file (.obj/.off/.tet)");
  cv->add_option("--dim", cv_dim, "mesh intrinsic dimension");
  cv->add_option("-o,--output", cv_out, "write JSON here instead of stdout");

  // --- bound ------------------------------------------------------------
  auto* bd = app.add_subcommand("bound", "evaluate one inequality on a spectrum file");
  std::string bd_ineq, bd_spectrum, bd_c1, bd_out;
  int bd_k = 1;
  std::optional<double> bd_h0, bd_hln, bd_volume, bd_c2;
  bd->add_option("--ineq", bd_ineq, "inequality id")->required();
  bd->add_option("--spectrum", bd_spectrum, "spectrum JSON file")->required();
  bd->add_option("--k", bd_k, "prefix length k")->required();
  bd->add_option("--h0", bd_h0, "sup |H|");
  bd->add_option("--h-ln", bd_hln, "L^n curvature norm");
  bd->add_option("--volume", bd_volume, "domain volume");
  bd->add_option("--c1", bd_c1, "Sobolev constant C1, or 'talenti'");
  bd->add_option("--c2", bd_c2, "Michael-Simon constant C2");
  bd->add_option("-o,--output", bd_out, "write JSON here instead of stdout");

  // --- suite ------------------------------------------------------------
  auto* su = app.add_subcommand("suite", "run a scenario JSON end to end");
  std::string su_path;
  su->add_option("scenario", su_path, "scenario JSON file")->required();

  // --- gen-mesh ---------------------------------------------------------
  auto* gm = app.add_subcommand("gen-mesh", "write a fixture mesh");
  std::string gm_kind, gm_out;
  int gm_subdiv = 2, gm_nx = 10, gm_ny = 10, gm_n = 4, gm_rings = 12, gm_ambient = 3;
  double gm_radius = 1.0, gm_edge = 1.0;
  gm->add_option("kind", gm_kind, "icosphere | grid | tetgrid | disk | hemisphere")->required();
  gm->add_option("--subdiv", gm_subdiv, "icosphere subdivisions");
  gm->add_option("--nx", gm_nx, "grid cells in x");
  gm->add_option("--ny", gm_ny, "grid cells in y");
  gm->add_option("--n", gm_n, "tetgrid cells per side");
  gm->add_option("--edge", gm_edge, "tetgrid cube edge");
  gm->add_option("--rings", gm_rings, "disk/hemisphere rings");
  gm->add_option("--radius", gm_radius, "radius");
  gm->add_option("--ambient", gm_ambient, "grid ambient dimension (2 or 3)");
  gm->add_option("-o,--output", gm_out, "output mesh path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 64;
  }

  try {
    if (*sp) {
      const GeometrySpec g = geometry_from_flags(sp_geom);
      const Operator op = operator_from_name(sp_operator);
      harness::Scenario sc;
      sc.geometry = g;
      sc.op = op;
      sc.count = sp_count;
      sc.source = harness::SpectrumSource::analytic;
      emit(json(harness::compute_spectrum(sc)), sp_out);
      return 0;
    }
    if (*cv) {
      CurvatureSummary summary;
      if (!cv_mesh.empty()) {
        const auto mesh = geom::load_mesh(cv_mesh, cv_dim);
        const auto ops = geom::assemble_operators(mesh);
        summary = geom::discrete_mean_curvature(mesh, ops).summary;
      } else if (!cv_geom.kind.empty()) {
        summary = geom::curvature_summary_analytic(geometry_from_flags(cv_geom));
      } else {
        fail(ErrorCode::invalid_config, "curvature needs --geometry or --mesh");
      }
      emit(json(summary), cv_out);
      return 0;
    }
    if (*bd) {
      std::ifstream in(bd_spectrum);
      if (!in) fail(ErrorCode::io_error, "cannot open spectrum file: " + bd_spectrum);
      json js;
      in >> js;
      const Spectrum s = validate_spectrum(js.get<Spectrum>());
      const InequalityId id = inequality_from_name(bd_ineq);

      CurvatureSummary curv;
      curv.h_sup = bd_h0.value_or(0.0);
      curv.h_ln = bd_hln.value_or(0.0);
      curv.volume = bd_volume.value_or(1.0);
      SobolevConfig cfg;
      if (bd_c1 == "talenti")
        cfg.c1_talenti = true;
      else if (!bd_c1.empty())
        cfg.c1_value = std::stod(bd_c1);
      cfg.c2 = bd_c2;
      const bool flat = curv.h_sup == 0.0 && curv.h_ln == 0.0;
      const auto constants = sobolev::resolve_constants(cfg, curv, s.dim_n, flat);
      bounds::EvalContext ctx{&curv, &constants};

      BoundReport report;
      if ((int)s.values.size() >= bd_k + 1) {
        report = bounds::check(id, s, bd_k, ctx);
      } else {
        // bound-only: report the saturated verdict at the implied bound
        report.id = id;
        report.k = bd_k;
        report.implied_bound = bounds::implied_bound(id, s, bd_k, ctx, &report.warnings);
        Spectrum padded = s;
        padded.values.push_back(*report.implied_bound);
        const BoundReport at_bound = bounds::check(id, padded, bd_k, ctx);
        report.lhs = at_bound.lhs;
        report.rhs = at_bound.rhs;
        report.holds = at_bound.holds;
        report.tightness = at_bound.tightness;
        report.constants_used = at_bound.constants_used;
      }
      emit(json(report), bd_out);
      return 0;
    }
    if (*su) {
      const harness::RunResult r = harness::run_scenario_file(su_path);
      if (r.exit_code == 1) {
        json j{{"error", r.error_code}, {"message", r.message}};
        std::cerr << j.dump() << "\n";
      } else {
        json j{{"report", r.json_path}, {"csv", r.csv_path}, {"exit", r.exit_code}};
        std::cout << j.dump() << "\n";
      }
      return r.exit_code;
    }
    if (*gm) {
      geom::ImmersedMesh mesh;
      if (gm_kind == "icosphere")
        mesh = geom::make_icosphere(gm_subdiv, gm_radius);
      else if (gm_kind == "grid")
        mesh = geom::make_grid(gm_nx, gm_ny, gm_ambient);
      else if (gm_kind == "tetgrid")
        mesh = geom::make_tetgrid(gm_n, gm_edge);
      else if (gm_kind == "disk")
        mesh = geom::make_disk(gm_rings, gm_radius);
      else if (gm_kind == "hemisphere")
        mesh = geom::make_hemisphere(gm_rings, gm_radius);
      else
        fail(ErrorCode::invalid_config, "unknown mesh kind: " + gm_kind);
      geom::save_mesh(mesh, gm_out);
      std::cout << json{{"mesh", gm_out},
                        {"vertices", mesh.vertex_count()},
                        {"cells", mesh.cells.size()}}
                       .dump()
                << "\n";
      return 0;
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    json j{{"error", "internal_error"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 64;
}
