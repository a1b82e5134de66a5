#include <doctest.h>

#include <cmath>

#include "eigenbound/analytic_spectra.hpp"
#include "eigenbound/bounds.hpp"
#include "eigenbound/mesh_geometry.hpp"
#include "eigenbound/sobolev.hpp"

using namespace eigenbound;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi4 = kPi2 * kPi2;

const CurvatureSummary kFlat{0.0, 0.0, 1.0};

bounds::EvalContext flat_ctx() { return {&kFlat, nullptr}; }

sobolev::DerivedConstants talenti_constants(int n) {
  SobolevConfig cfg;
  cfg.c1_talenti = true;
  cfg.c2 = 0.5;
  return sobolev::resolve_constants(cfg, kFlat, n, true);
}

std::vector<InequalityId> dirichlet_flat_ids() {
  return {InequalityId::ppw_gap, InequalityId::hile_protter, InequalityId::yang1,
          InequalityId::yang2, InequalityId::chen_cheng};
}

std::vector<InequalityId> plate_flat_ids() {
  return {InequalityId::ppw_plate,   InequalityId::hile_yeh,
          InequalityId::chen_qian_hook, InequalityId::cheng_yang_plate,
          InequalityId::cim_plate,   InequalityId::wang_xia_plate};
}

}  // namespace

TEST_CASE("yang1 on the unit cube at k = 1") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 4);
  const auto report = bounds::check(InequalityId::yang1, cube, 1, flat_ctx());
  CHECK(report.lhs == doctest::Approx(27.0 * kPi4).epsilon(1e-13));
  CHECK(report.rhs == doctest::Approx(36.0 * kPi4).epsilon(1e-13));
  CHECK(report.holds);
  CHECK(*report.tightness == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("thm_dirichlet_sobolev collapses onto yang1 bit for bit when h_ln = 0") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 24);
  const auto constants = talenti_constants(3);
  bounds::EvalContext ctx{&kFlat, &constants};
  for (int k = 1; k <= 10; ++k) {
    const auto yang = bounds::check(InequalityId::yang1, cube, k, ctx);
    const auto thm = bounds::check(InequalityId::thm_dirichlet_sobolev, cube, k, ctx);
    CHECK(yang.lhs == thm.lhs);  // exact, not approximate
    CHECK(yang.rhs == thm.rhs);
    CHECK(*yang.implied_bound == *thm.implied_bound);
  }
}

TEST_CASE("thm_plate_sobolev collapses onto wang_xia_plate when h_ln = 0") {
  const auto ball = spectra::ball_plate_spectrum(3, 1.0, 12);
  const auto constants = talenti_constants(3);
  bounds::EvalContext ctx{&kFlat, &constants};
  for (int k = 1; k <= 6; ++k) {
    const auto wx = bounds::check(InequalityId::wang_xia_plate, ball, k, ctx);
    const auto thm = bounds::check(InequalityId::thm_plate_sobolev, ball, k, ctx);
    CHECK(wx.lhs == thm.lhs);
    CHECK(wx.rhs == thm.rhs);
    const auto ms = bounds::check(InequalityId::thm_plate_ms, ball, k, ctx);
    CHECK(ms.rhs == thm.rhs);
  }
}

TEST_CASE("k = 1 closed forms across dimensions") {
  for (int n : {2, 3, 4}) {
    const double lam1 = 7.3 + n;  // any positive value works for the identity
    const Spectrum s{Operator::laplacian, n, n, {lam1}, "synthetic"};
    const double quad = bounds::bound_quadratic(InequalityId::yang1, s, 1, flat_ctx());
    CHECK(std::abs(quad - (1.0 + 4.0 / n) * lam1) <= 1e-12 * quad);

    const auto hp = bounds::bound_bisection(InequalityId::hile_protter, s, 1, flat_ctx());
    CHECK(std::abs(hp.value - quad) <= 1e-10 * quad);

    const double g1 = 11.0 + n;
    const Spectrum p{Operator::bilaplacian, n, n, {g1}, "synthetic"};
    const auto cy = bounds::bound_bisection(InequalityId::cheng_yang_plate, p, 1, flat_ctx());
    const double expected = g1 * (1.0 + 8.0 * (n + 2.0) / ((double)n * n));
    CHECK(std::abs(cy.value - expected) <= 1e-9 * expected);
  }
}

TEST_CASE("yang2 reproduces the 7 pi^2 cube bound") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 4);
  CHECK(bounds::bound_quadratic(InequalityId::yang2, cube, 1, flat_ctx()) ==
        doctest::Approx(7.0 * kPi2).epsilon(1e-13));
  // n=3, lambda_1 = 3 pi^2: bound 7 pi^2 >= true lambda_2 = 6 pi^2
  CHECK(7.0 * kPi2 >= cube.values[1]);
}

TEST_CASE("soundness sweep on the unit cube") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 16);
  const auto constants = talenti_constants(3);
  bounds::EvalContext ctx{&kFlat, &constants};
  auto ids = dirichlet_flat_ids();
  ids.push_back(InequalityId::thm_dirichlet_sobolev);
  ids.push_back(InequalityId::thm_dirichlet_ms);
  for (InequalityId id : ids) {
    for (int k = 1; k <= 10; ++k) {
      const auto report = bounds::check(id, cube, k, ctx);
      CHECK(report.holds);
      CHECK(*report.implied_bound >= cube.values[k] * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("soundness sweep on the disk plate spectrum") {
  const auto disk = spectra::ball_plate_spectrum(2, 1.0, 16);
  for (InequalityId id : plate_flat_ids()) {
    for (int k = 1; k <= 10; ++k) {
      const auto report = bounds::check(id, disk, k, flat_ctx());
      CHECK(report.holds);
      CHECK(*report.implied_bound >= disk.values[k] * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("wang_xia holds on the disk for k = 1..5 with H0 = 0") {
  const auto disk = spectra::ball_plate_spectrum(2, 1.0, 8);
  for (int k = 1; k <= 5; ++k)
    CHECK(bounds::check(InequalityId::wang_xia_plate, disk, k, flat_ctx()).holds);
}

TEST_CASE("chen_cheng covers the curved hemisphere fixtures") {
  const auto hemi = spectra::cap_dirichlet_spectrum(2, 1.0, 0.5 * kPi, 16);
  const CurvatureSummary curv =
      geom::curvature_summary_analytic(GeometrySpec{CapGeometry{2, 1.0, 0.5 * kPi}});
  bounds::EvalContext ctx{&curv, nullptr};
  for (int k = 1; k <= 10; ++k) {
    const auto report = bounds::check(InequalityId::chen_cheng, hemi, k, ctx);
    CHECK(report.holds);
    CHECK(*report.implied_bound >= hemi.values[k] * (1.0 - 1e-9));
  }
  // yang1 saturates exactly at k = 1 here (lambda_2 = 3 lambda_1)
  const auto y1 = bounds::check(InequalityId::yang1, hemi, 1, ctx);
  CHECK(y1.holds);
  CHECK(*y1.tightness == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flat-domain inequalities genuinely fail on the S^3 hemisphere") {
  // 8 = lambda_2 > (1 + 4/3) lambda_1 = 7: the curved suites must carry the
  // curvature-aware ids only
  const auto hemi = spectra::cap_dirichlet_spectrum(3, 1.0, 0.5 * kPi, 8);
  bounds::EvalContext ctx = flat_ctx();
  CHECK_FALSE(bounds::check(InequalityId::yang1, hemi, 1, ctx).holds);
  CHECK_FALSE(bounds::check(InequalityId::yang2, hemi, 1, ctx).holds);
}

TEST_CASE("sobolev-family evaluators on the S^3 hemisphere with user constants") {
  const auto hemi = spectra::cap_dirichlet_spectrum(3, 1.0, 0.5 * kPi, 16);
  const CurvatureSummary curv =
      geom::curvature_summary_analytic(GeometrySpec{CapGeometry{3, 1.0, 0.5 * kPi}});
  CHECK(curv.h_ln == doctest::Approx(std::pow(kPi, 2.0 / 3.0)).epsilon(1e-12));
  SobolevConfig cfg;
  cfg.c1_value = 10.0;
  cfg.c2 = 0.3;
  const auto constants = sobolev::resolve_constants(cfg, curv, 3, false);
  bounds::EvalContext ctx{&curv, &constants};
  for (InequalityId id : {InequalityId::chen_cheng, InequalityId::thm_dirichlet_sobolev,
                          InequalityId::thm_dirichlet_ms}) {
    for (int k = 1; k <= 10; ++k) {
      const auto report = bounds::check(id, hemi, k, ctx);
      CHECK(report.holds);
      CHECK(*report.implied_bound >= hemi.values[k] * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("implied bound grows with the effective constant") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 8);
  const CurvatureSummary unit_curv{1.0, 1.0, 1.0};
  double prev = 0.0;
  for (double cs : {0.0, 0.5, 1.0, 4.0, 25.0, 300.0}) {
    sobolev::DerivedConstants constants;
    constants.cs = cs;
    constants.gate_ok = true;
    bounds::EvalContext ctx{&unit_curv, &constants};
    const double b = bounds::bound_quadratic(InequalityId::thm_dirichlet_ms, cube, 4, ctx);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("scaling covariance of implied bounds") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 12);
  const auto constants = talenti_constants(3);
  for (double s : {0.5, 2.0, 10.0}) {
    const Spectrum scaled = scale_spectrum(cube, s);
    const CurvatureSummary scaled_curv{0.0, 0.0, s * s * s};
    bounds::EvalContext ctx{&kFlat, &constants};
    bounds::EvalContext scaled_ctx{&scaled_curv, &constants};
    auto ids = dirichlet_flat_ids();
    ids.push_back(InequalityId::thm_dirichlet_sobolev);
    for (InequalityId id : ids) {
      std::vector<std::string> w;
      const double base = bounds::implied_bound(id, cube, 5, ctx, &w);
      const double mapped = bounds::implied_bound(id, scaled, 5, scaled_ctx, &w);
      CHECK(std::abs(mapped - base / (s * s)) <= 1e-10 * mapped);
    }
  }
  const auto disk = spectra::ball_plate_spectrum(2, 1.0, 12);
  for (double s : {0.5, 2.0, 10.0}) {
    const Spectrum scaled = scale_spectrum(disk, s);
    bounds::EvalContext ctx = flat_ctx();
    for (InequalityId id : plate_flat_ids()) {
      std::vector<std::string> w;
      const double base = bounds::implied_bound(id, disk, 4, ctx, &w);
      const double mapped = bounds::implied_bound(id, scaled, 4, ctx, &w);
      CHECK(std::abs(mapped - base / (s * s * s * s)) <= 1e-10 * mapped);
    }
  }
}

TEST_CASE("degenerate cluster at the truncation point") {
  // lambda_{k+1} equal to lambda_k: zero terms drop out, hile_protter's sum
  // diverges and is reported as holding
  const Spectrum s{Operator::laplacian, 3, 3, {1.0, 2.0, 2.0}, "synthetic"};
  const auto hp = bounds::check(InequalityId::hile_protter, s, 2, flat_ctx());
  CHECK(hp.holds);
  CHECK(std::isinf(hp.rhs));
  const auto y = bounds::check(InequalityId::yang1, s, 2, flat_ctx());
  CHECK(y.holds);  // the tied term contributes zero to both sides
}

TEST_CASE("typed evaluator errors") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 6);
  const auto disk = spectra::ball_plate_spectrum(2, 1.0, 6);

  try {
    bounds::check(InequalityId::yang1, cube, 20, flat_ctx());
    FAIL("expected insufficient_spectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_spectrum);
  }
  try {
    bounds::check(InequalityId::yang1, disk, 1, flat_ctx());
    FAIL("expected operator_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::operator_mismatch);
  }
  try {
    bounds::EvalContext ctx{nullptr, nullptr};
    bounds::check(InequalityId::chen_cheng, cube, 1, ctx);
    FAIL("expected missing_curvature");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_curvature);
  }
  try {
    bounds::EvalContext ctx{&kFlat, nullptr};
    bounds::check(InequalityId::thm_dirichlet_sobolev, cube, 1, ctx);
    FAIL("expected missing_sobolev");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_sobolev);
  }
  try {
    const auto square = spectra::box_dirichlet_spectrum({1.0, 1.0}, 6);
    const auto constants = talenti_constants(3);
    bounds::EvalContext ctx{&kFlat, &constants};
    bounds::check(InequalityId::thm_dirichlet_sobolev, square, 1, ctx);
    FAIL("expected dimension_too_low");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_too_low);
  }
  try {
    // not a genuine spectrum prefix: the Yang quadratic loses its real roots
    const Spectrum fake{Operator::laplacian, 3, 3, {1.0, 10.0}, "synthetic"};
    bounds::bound_quadratic(InequalityId::yang1, fake, 2, flat_ctx());
    FAIL("expected negative_discriminant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::negative_discriminant);
  }
}

TEST_CASE("compare orders reports by implied bound") {
  const auto cube = spectra::box_dirichlet_spectrum({1.0, 1.0, 1.0}, 12);
  const auto table = bounds::compare(
      {InequalityId::yang1, InequalityId::hile_protter, InequalityId::ppw_gap}, cube, 5,
      flat_ctx());
  REQUIRE(table.size() == 3);
  // fixture-level observation, confirmed numerically before freezing
  CHECK(table[0].id == InequalityId::yang1);
  CHECK(table[1].id == InequalityId::hile_protter);
  CHECK(table[2].id == InequalityId::ppw_gap);
  CHECK(*table[0].implied_bound <= *table[1].implied_bound);
  CHECK(*table[1].implied_bound <= *table[2].implied_bound);

  const auto single = bounds::compare({InequalityId::yang2}, cube, 2, flat_ctx());
  CHECK(single.size() == 1);
  CHECK(bounds::compare({}, cube, 2, flat_ctx()).empty());
}

TEST_CASE("bisection reports no violation for flat-lining inputs") {
  // hile_yeh lhs scales as 1/sqrt(sum), rhs -> 0 as t grows, so a violation
  // always exists; force the no-violation path with ppw-style monotone data
  // by feeding an inequality whose rhs dominates forever: chen_cheng with an
  // enormous curvature term
  const Spectrum s{Operator::laplacian, 3, 3, {1.0}, "synthetic"};
  CurvatureSummary huge{1e12, 1e12, 1.0};
  bounds::EvalContext ctx{&huge, nullptr};
  try {
    bounds::bound_bisection(InequalityId::chen_cheng, s, 1, ctx);
    FAIL("expected no_violation_found");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_violation_found);
  }
}
