#pragma once

#include <vector>

#include "eigenbound/sobolev.hpp"
#include "eigenbound/types.hpp"

namespace eigenbound::bounds {

struct EvalContext {
  const CurvatureSummary* curvature = nullptr;
  const sobolev::DerivedConstants* constants = nullptr;
};

bool is_plate_id(InequalityId id);
bool requires_curvature(InequalityId id);
bool requires_sobolev_c1(InequalityId id);
bool requires_sobolev_cs(InequalityId id);
bool is_quadratic_id(InequalityId id);

// Verdict for the inequality with lambda_{k+1} taken from the spectrum;
// every inequality is normalized to holds <=> lhs <= rhs. The implied bound
// on the next eigenvalue is filled in as well.
BoundReport check(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx);

// Closed-form implied bound for the Yang-type quadratic family plus the two
// gap inequalities. Uses only the first k values.
double bound_quadratic(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx);

struct BisectionOutcome {
  double value = 0.0;
  std::vector<std::string> warnings;
};

// Largest t > lambda_k still satisfying the inequality, by doubling until
// violation then bisection; a 64-point scan guards against multiple
// crossings (largest crossing wins, with a warning).
BisectionOutcome bound_bisection(InequalityId id, const Spectrum& s, int k,
                                 const EvalContext& ctx);

double implied_bound(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx,
                     std::vector<std::string>* warnings = nullptr);

// One report per id, sorted by implied bound ascending.
std::vector<BoundReport> compare(const std::vector<InequalityId>& ids, const Spectrum& s, int k,
                                 const EvalContext& ctx);

}  // namespace eigenbound::bounds
