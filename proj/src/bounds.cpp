#include "eigenbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eigenbound::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Effective coefficient of the Yang-type normal form
// n sum (t - l_i)^2 <= c sum (t - l_i) l_i.
double yang_effective_c(InequalityId id, int n, const EvalContext& ctx) {
  switch (id) {
    case InequalityId::yang1:
      return 4.0;
    case InequalityId::thm_dirichlet_sobolev:
      return 4.0 + (double)n * n * (*ctx.constants->c1_effective) *
                       (ctx.curvature->h_ln * ctx.curvature->h_ln);
    case InequalityId::thm_dirichlet_ms:
      return 4.0 +
             (double)n * n * (*ctx.constants->cs) * (ctx.curvature->h_ln * ctx.curvature->h_ln);
    default:
      fail(ErrorCode::invalid_config, "not a Yang-type id");
  }
}

// lhs/rhs of the inequality with the next eigenvalue replaced by t, using
// the first k spectrum values.
Sides evaluate(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx, double t) {
  const int n = s.dim_n;
  const double* v = s.values.data();
  Sides out;

  auto sum_over = [&](auto&& f) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += f(v[i]);
    return acc;
  };

  switch (id) {
    case InequalityId::ppw_gap: {
      out.lhs = t - v[k - 1];
      out.rhs = (4.0 / ((double)k * n)) * sum_over([](double x) { return x; });
      return out;
    }
    case InequalityId::hile_protter: {
      out.lhs = 0.25 * k * n;
      out.rhs = sum_over([&](double x) { return x / (t - x); });
      if (!(out.rhs == out.rhs)) out.rhs = kInf;  // 0/0 from an exact tie
      return out;
    }
    case InequalityId::yang1:
    case InequalityId::thm_dirichlet_sobolev:
    case InequalityId::thm_dirichlet_ms: {
      const double c = yang_effective_c(id, n, ctx);
      out.lhs = n * sum_over([&](double x) { return (t - x) * (t - x); });
      out.rhs = c * sum_over([&](double x) { return (t - x) * x; });
      return out;
    }
    case InequalityId::yang2: {
      out.lhs = t;
      out.rhs = (1.0 + 4.0 / n) * sum_over([](double x) { return x; }) / k;
      return out;
    }
    case InequalityId::chen_cheng: {
      const double h0 = ctx.curvature->h_sup;
      const double shift = 0.25 * n * n * h0 * h0;
      out.lhs = sum_over([&](double x) { return (t - x) * (t - x); });
      out.rhs = (4.0 / n) * sum_over([&](double x) { return (t - x) * (x + shift); });
      return out;
    }
    case InequalityId::ppw_plate: {
      out.lhs = t - v[k - 1];
      out.rhs = (8.0 * (n + 2.0) / ((double)n * n)) * sum_over([](double x) { return x; }) / k;
      return out;
    }
    case InequalityId::hile_yeh: {
      const double sum_g = sum_over([](double x) { return x; });
      out.lhs = (double)n * n * std::pow((double)k, 1.5) / (8.0 * n + 2.0) / std::sqrt(sum_g);
      out.rhs = sum_over([&](double x) { return std::sqrt(x) / (t - x); });
      if (!(out.rhs == out.rhs)) out.rhs = kInf;
      return out;
    }
    case InequalityId::chen_qian_hook: {
      out.lhs = (double)n * n * k * k / (8.0 * (n + 2.0));
      const double roots = sum_over([](double x) { return std::sqrt(x); });
      out.rhs = roots * sum_over([&](double x) { return std::sqrt(x) / (t - x); });
      if (!(out.rhs == out.rhs)) out.rhs = kInf;
      return out;
    }
    case InequalityId::cheng_yang_plate: {
      out.lhs = t - sum_over([](double x) { return x; }) / k;
      const double c = std::sqrt(8.0 * (n + 2.0) / ((double)n * n));
      out.rhs = c * sum_over([&](double x) { return std::sqrt(x * (t - x)); }) / k;
      return out;
    }
    case InequalityId::cim_plate: {
      const double h0 = ctx.curvature->h_sup;
      const double q = (double)n * n * h0 * h0;
      out.lhs = sum_over([&](double x) { return (t - x) * (t - x); });
      out.rhs = (1.0 / ((double)n * n)) * sum_over([&](double x) {
                  const double sq = std::sqrt(x);
                  return (t - x) * (q + (2.0 * n + 4.0) * sq) * (q + 4.0 * sq);
                });
      return out;
    }
    case InequalityId::wang_xia_plate: {
      const double h0 = ctx.curvature->h_sup;
      const double q = (double)n * n * h0 * h0;
      out.lhs = sum_over([&](double x) { return (t - x) * (t - x); });
      const double a = sum_over([&](double x) {
        const double sq = std::sqrt(x);
        return (t - x) * (t - x) * (q + (2.0 * n + 4.0) * sq);
      });
      const double b = sum_over([&](double x) {
        const double sq = std::sqrt(x);
        return (t - x) * (q + 4.0 * sq);
      });
      out.rhs = std::sqrt(a) * std::sqrt(b) / n;
      return out;
    }
    case InequalityId::thm_plate_sobolev:
    case InequalityId::thm_plate_ms: {
      const double h2 = ctx.curvature->h_ln * ctx.curvature->h_ln;
      const double cc = (id == InequalityId::thm_plate_sobolev) ? *ctx.constants->c1_effective
                                                                : *ctx.constants->cs;
      const double p = (double)n * n * cc * h2;
      out.lhs = sum_over([&](double x) { return (t - x) * (t - x); });
      const double a = sum_over([&](double x) {
        const double sq = std::sqrt(x);
        return (t - x) * (t - x) * ((p + (2.0 * n + 4.0)) * sq);
      });
      const double b = sum_over([&](double x) {
        const double sq = std::sqrt(x);
        return (t - x) * ((p + 4.0) * sq);
      });
      out.rhs = std::sqrt(a) * std::sqrt(b) / n;
      return out;
    }
    default:
      fail(ErrorCode::invalid_config, "inequality id has no check form");
  }
}

void validate_inputs(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx,
                     int min_values) {
  if (k < 1) fail(ErrorCode::invalid_config, "k must be >= 1");
  if ((int)s.values.size() < min_values) {
    std::ostringstream os;
    os << inequality_name(id) << " at k=" << k << " needs " << min_values
       << " spectrum values, got " << s.values.size();
    fail(ErrorCode::insufficient_spectrum, os.str());
  }
  const Operator expected = is_plate_id(id) ? Operator::bilaplacian : Operator::laplacian;
  if (s.op != expected) {
    std::ostringstream os;
    os << inequality_name(id) << " expects a " << operator_name(expected) << " spectrum";
    fail(ErrorCode::operator_mismatch, os.str());
  }
  const bool sobolev_family = requires_sobolev_c1(id) || requires_sobolev_cs(id);
  if (sobolev_family && s.dim_n < 3)
    fail(ErrorCode::dimension_too_low,
         std::string(inequality_name(id)) + " is undefined for n = 2");
  if ((requires_curvature(id) || sobolev_family) && ctx.curvature == nullptr)
    fail(ErrorCode::missing_curvature,
         std::string(inequality_name(id)) + " needs a curvature summary");
  if (sobolev_family) {
    if (ctx.constants == nullptr)
      fail(ErrorCode::missing_sobolev,
           std::string(inequality_name(id)) + " needs Sobolev constants");
    if (requires_sobolev_c1(id) && !ctx.constants->c1_effective)
      fail(ErrorCode::missing_sobolev, std::string(inequality_name(id)) + " needs C1");
    if (requires_sobolev_cs(id) && !ctx.constants->cs)
      fail(ErrorCode::missing_sobolev,
           std::string(inequality_name(id)) + " needs C_s (supply c2 with a passing gate)");
  }
}

ConstantsUsed echo_constants(InequalityId id, const Spectrum& s, const EvalContext& ctx) {
  ConstantsUsed cu;
  if (ctx.curvature != nullptr && (requires_curvature(id) || requires_sobolev_c1(id) ||
                                   requires_sobolev_cs(id))) {
    cu.h_sup = ctx.curvature->h_sup;
    cu.h_ln = ctx.curvature->h_ln;
    cu.volume = ctx.curvature->volume;
  }
  if (ctx.constants != nullptr) {
    if (requires_sobolev_c1(id)) cu.c1 = ctx.constants->c1_effective;
    if (requires_sobolev_cs(id)) {
      cu.c2 = ctx.constants->c2;
      cu.cs = ctx.constants->cs;
    }
  }
  if (id == InequalityId::yang1 || id == InequalityId::thm_dirichlet_sobolev ||
      id == InequalityId::thm_dirichlet_ms)
    cu.effective_c = yang_effective_c(id, s.dim_n, ctx);
  return cu;
}

}  // namespace

bool is_plate_id(InequalityId id) {
  switch (id) {
    case InequalityId::ppw_plate:
    case InequalityId::hile_yeh:
    case InequalityId::chen_qian_hook:
    case InequalityId::cheng_yang_plate:
    case InequalityId::cim_plate:
    case InequalityId::wang_xia_plate:
    case InequalityId::thm_plate_sobolev:
    case InequalityId::thm_plate_ms:
      return true;
    default:
      return false;
  }
}

bool requires_curvature(InequalityId id) {
  switch (id) {
    case InequalityId::chen_cheng:
    case InequalityId::cim_plate:
    case InequalityId::wang_xia_plate:
    case InequalityId::thm_dirichlet_sobolev:
    case InequalityId::thm_dirichlet_ms:
    case InequalityId::thm_plate_sobolev:
    case InequalityId::thm_plate_ms:
      return true;
    default:
      return false;
  }
}

bool requires_sobolev_c1(InequalityId id) {
  return id == InequalityId::thm_dirichlet_sobolev || id == InequalityId::thm_plate_sobolev;
}

bool requires_sobolev_cs(InequalityId id) {
  return id == InequalityId::thm_dirichlet_ms || id == InequalityId::thm_plate_ms;
}

bool is_quadratic_id(InequalityId id) {
  switch (id) {
    case InequalityId::yang1:
    case InequalityId::yang2:
    case InequalityId::thm_dirichlet_sobolev:
    case InequalityId::thm_dirichlet_ms:
    case InequalityId::ppw_gap:
    case InequalityId::ppw_plate:
      return true;
    default:
      return false;
  }
}

BoundReport check(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx) {
  validate_inputs(id, s, k, ctx, k + 1);
  const double t = s.values[k];  // lambda_{k+1}
  const Sides sides = evaluate(id, s, k, ctx, t);

  BoundReport report;
  report.id = id;
  report.k = k;
  report.lhs = sides.lhs;
  report.rhs = sides.rhs;
  report.holds =
      sides.lhs <= sides.rhs + 1e-12 * std::max(std::abs(sides.lhs), std::abs(sides.rhs));
  if (sides.rhs > 0.0)
    report.tightness = std::isinf(sides.rhs) ? 0.0 : sides.lhs / sides.rhs;
  report.constants_used = echo_constants(id, s, ctx);
  report.implied_bound = implied_bound(id, s, k, ctx, &report.warnings);
  return report;
}

double bound_quadratic(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx) {
  if (!is_quadratic_id(id))
    fail(ErrorCode::invalid_config, "bound_quadratic does not cover this id");
  validate_inputs(id, s, k, ctx, k);
  const int n = s.dim_n;
  double A = 0.0, B = 0.0;
  for (int i = 0; i < k; ++i) {
    A += s.values[i];
    B += s.values[i] * s.values[i];
  }
  switch (id) {
    case InequalityId::yang2:
      return (1.0 + 4.0 / n) * A / k;
    case InequalityId::ppw_gap:
      return s.values[k - 1] + (4.0 / ((double)k * n)) * A;
    case InequalityId::ppw_plate:
      return s.values[k - 1] + (8.0 * (n + 2.0) / ((double)n * n)) * A / k;
    default:
      break;
  }
  const double c = yang_effective_c(id, n, ctx);
  const double disc = (2.0 * n + c) * (2.0 * n + c) * A * A - 4.0 * n * k * (n + c) * B;
  if (disc < 0.0)
    fail(ErrorCode::negative_discriminant,
         "Yang-type quadratic has no real root; input is not a genuine spectrum prefix");
  return ((2.0 * n + c) * A + std::sqrt(disc)) / (2.0 * n * k);
}

BisectionOutcome bound_bisection(InequalityId id, const Spectrum& s, int k,
                                 const EvalContext& ctx) {
  if (is_quadratic_id(id))
    fail(ErrorCode::invalid_config, "bound_bisection does not cover this id");
  validate_inputs(id, s, k, ctx, k);

  auto g = [&](double t) {
    const Sides sd = evaluate(id, s, k, ctx, t);
    if (std::isinf(sd.rhs)) return -kInf;
    return sd.lhs - sd.rhs;
  };

  const double anchor = s.values[k - 1];
  const double start = anchor * (1.0 + 1e-9);
  const double ceiling = std::ldexp(anchor, 60);  // 2^60 * lambda_k

  double lo = start;
  double g_lo = g(lo);
  if (g_lo > 0.0)
    fail(ErrorCode::no_violation_found,
         "inequality is already violated just above lambda_k; degenerate input");
  double hi = lo;
  for (;;) {
    hi *= 2.0;
    if (hi > ceiling)
      fail(ErrorCode::no_violation_found,
           "inequality holds for every candidate up to 2^60 * lambda_k; degenerate input");
    if (g(hi) > 0.0) break;
    lo = hi;
    g_lo = g(hi);
  }

  BisectionOutcome out;
  // guard against multiple crossings on the bracket; keep the largest
  const int scan_points = 64;
  double seg_lo = lo, seg_hi = hi;
  int crossings = 0;
  double prev_x = lo, prev_g = g_lo;
  for (int j = 1; j <= scan_points; ++j) {
    const double x = lo + (hi - lo) * j / scan_points;
    const double gx = (j == scan_points) ? g(hi) : g(x);
    if ((prev_g <= 0.0) && (gx > 0.0)) {
      ++crossings;
      seg_lo = prev_x;
      seg_hi = x;
    }
    prev_x = x;
    prev_g = gx;
  }
  if (crossings > 1)
    out.warnings.push_back("MultiRoot: violation function changes sign more than once; "
                           "returning the largest crossing");

  double a = seg_lo, b = seg_hi;
  for (int it = 0; it < 200 && (b - a) > 1e-13 * b; ++it) {
    const double mid = 0.5 * (a + b);
    if (g(mid) > 0.0)
      b = mid;
    else
      a = mid;
  }
  out.value = 0.5 * (a + b);
  return out;
}

double implied_bound(InequalityId id, const Spectrum& s, int k, const EvalContext& ctx,
                     std::vector<std::string>* warnings) {
  if (is_quadratic_id(id)) return bound_quadratic(id, s, k, ctx);
  BisectionOutcome o = bound_bisection(id, s, k, ctx);
  if (warnings != nullptr)
    warnings->insert(warnings->end(), o.warnings.begin(), o.warnings.end());
  return o.value;
}

std::vector<BoundReport> compare(const std::vector<InequalityId>& ids, const Spectrum& s, int k,
                                 const EvalContext& ctx) {
  std::vector<BoundReport> reports;
  reports.reserve(ids.size());
  for (InequalityId id : ids) reports.push_back(check(id, s, k, ctx));
  std::stable_sort(reports.begin(), reports.end(), [](const BoundReport& x, const BoundReport& y) {
    const double bx = x.implied_bound.value_or(kInf);
    const double by = y.implied_bound.value_or(kInf);
    return bx < by;
  });
  return reports;
}

}  // namespace eigenbound::bounds
