#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eigenbound/bounds.hpp"
#include "eigenbound/sobolev.hpp"
#include "eigenbound/types.hpp"

namespace eigenbound::harness {

enum class SpectrumSource { analytic, fem, fd, file };

struct Scenario {
  std::string name;
  GeometrySpec geometry;
  Operator op = Operator::laplacian;
  SpectrumSource source = SpectrumSource::analytic;
  std::string spectrum_file;  // when source == file
  int count = 16;
  std::optional<double> grid_h;  // fd only
  std::vector<InequalityId> inequalities;
  int k_lo = 1;
  int k_hi = 1;
  SobolevConfig sobolev;
  std::string output;  // report basename; .json and .csv are appended
};

Scenario parse_scenario(const std::string& path);

struct RunResult {
  int exit_code = 0;  // 0 all hold, 2 violated, 1 error
  std::string error_code;
  std::string message;
  std::string json_path;
  std::string csv_path;
  std::vector<BoundReport> reports;
};

// Computes (or loads) the spectrum, derives curvature and constants, runs
// every (inequality, k) cell and writes the JSON report plus the CSV flat
// view. Never throws; failures land in the RunResult.
RunResult run_scenario(const Scenario& scenario);
RunResult run_scenario_file(const std::string& path);

// Building blocks shared with the CLI.
Spectrum compute_spectrum(const Scenario& scenario);
CurvatureSummary compute_curvature(const GeometrySpec& geometry);
bool geometry_is_flat(const GeometrySpec& geometry, const CurvatureSummary& curv);

std::string fnv1a_hex(const std::string& bytes);
const char* tool_version();

}  // namespace eigenbound::harness
