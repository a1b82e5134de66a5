#include <doctest.h>

#include <cmath>

#include "eigenbound/analytic_spectra.hpp"
#include "eigenbound/bounds.hpp"
#include "eigenbound/fem_oracle.hpp"
#include "eigenbound/mesh_geometry.hpp"

using namespace eigenbound;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;
}  // namespace

TEST_CASE("fem on the unit square reproduces 2 pi^2") {
  const auto mesh = geom::make_grid(32, 32, 2);
  const auto result = fem::fem_dirichlet_eigs(mesh, 5);
  CHECK(std::abs(result.spectrum.values[0] - 2.0 * kPi2) / (2.0 * kPi2) < 0.01);
  // P1 conforming eigenvalues approximate from above
  CHECK(result.spectrum.values[0] >= 2.0 * kPi2);
  CHECK(result.spectrum.values[1] >= 5.0 * kPi2);

  // mass-orthonormality of the eigenvectors
  const auto ops = geom::assemble_operators(mesh);
  for (std::size_t a = 0; a < result.eigenvectors.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double dot = 0.0;
      const auto mv = ops.mass.matvec(result.eigenvectors[b]);
      for (int v = 0; v < mesh.vertex_count(); ++v) dot += result.eigenvectors[a][v] * mv[v];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
  for (std::size_t i = 0; i < result.residual_norms.size(); ++i)
    CHECK(result.residual_norms[i] <= 1e-8 * result.spectrum.values[i]);
}

TEST_CASE("fem converges from above under refinement") {
  double prev = 1e30;
  for (int cells : {8, 16, 32}) {
    const auto mesh = geom::make_grid(cells, cells, 2);
    const double lam = fem::fem_dirichlet_eigs(mesh, 1).spectrum.values[0];
    CHECK(lam >= 2.0 * kPi2);
    CHECK(lam < prev);
    prev = lam;
  }
}

TEST_CASE("dirichlet inequalities hold on fem spectra") {
  // upper eigenvalue approximations keep every check green despite the
  // discretization error
  const auto mesh = geom::make_grid(24, 24, 2);
  const auto fem = fem::fem_dirichlet_eigs(mesh, 12);
  const CurvatureSummary flat{0.0, 0.0, 1.0};
  bounds::EvalContext ctx{&flat, nullptr};
  for (InequalityId id : {InequalityId::ppw_gap, InequalityId::hile_protter, InequalityId::yang1,
                          InequalityId::yang2, InequalityId::chen_cheng}) {
    for (int k = 1; k <= 10; ++k) CHECK(bounds::check(id, fem.spectrum, k, ctx).holds);
  }
}

TEST_CASE("fem counting function matches the box spectrum below a threshold") {
  const auto mesh = geom::make_grid(24, 24, 2);
  const auto result = fem::fem_dirichlet_eigs(mesh, 12);
  const auto exact = spectra::box_dirichlet_spectrum({1.0, 1.0}, 14);
  const double threshold = 11.0 * kPi2;  // between 10 pi^2 and 13 pi^2
  int fem_count = 0, exact_count = 0;
  for (double v : result.spectrum.values) fem_count += v <= threshold;
  for (double v : exact.values) exact_count += v <= threshold;
  CHECK(fem_count == exact_count);
}

TEST_CASE("fem on a coarse cube tet grid") {
  const auto mesh = geom::make_tetgrid(10, 1.0);
  const auto result = fem::fem_dirichlet_eigs(mesh, 1);
  CHECK(std::abs(result.spectrum.values[0] - 3.0 * kPi2) / (3.0 * kPi2) < 0.03);
}

TEST_CASE("fem on a disk mesh against the bessel value") {
  const auto mesh = geom::make_disk(16, 1.0);
  const auto result = fem::fem_dirichlet_eigs(mesh, 1);
  const double exact = spectra::ball_dirichlet_spectrum(2, 1.0, 1).values[0];
  CHECK(std::abs(result.spectrum.values[0] - exact) / exact < 0.02);
}

TEST_CASE("fem input gates") {
  const auto tiny = geom::make_grid(1, 1, 2);  // no interior vertices
  CHECK_THROWS_AS(fem::fem_dirichlet_eigs(tiny, 1), Error);
  const auto small = geom::make_grid(3, 3, 2);
  CHECK_THROWS_AS(fem::fem_dirichlet_eigs(small, 10), Error);  // count > interior
  const auto big = geom::make_grid(60, 60, 2);  // 3481 interior DOF
  try {
    fem::fem_dirichlet_eigs(big, 1);
    FAIL("expected too_many_dofs");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_many_dofs);
  }
}

TEST_CASE("fd clamped plate on the unit square") {
  fem::PlateDomain square{fem::PlateDomain::Kind::box, {1.0, 1.0}, 0.0, 2};
  const auto result = fem::fd_plate_eigs(square, 1.0 / 16.0, 4);
  // frozen after a three-grid convergence study; the classical value is 1294.934
  CHECK(std::abs(result.spectrum.values[0] - 1294.9) / 1294.9 < 0.01);
  CHECK(result.measured_order > 1.5);
  CHECK(result.measured_order < 2.5);
  // degenerate pair Gamma_2 = Gamma_3
  CHECK(result.spectrum.values[1] == doctest::Approx(result.spectrum.values[2]).epsilon(1e-6));
}

TEST_CASE("fd plate scaling: cube edge 2 versus edge 1") {
  fem::PlateDomain unit{fem::PlateDomain::Kind::box, {1.0, 1.0, 1.0}, 0.0, 3};
  fem::PlateDomain doubled{fem::PlateDomain::Kind::box, {2.0, 2.0, 2.0}, 0.0, 3};
  const auto a = fem::fd_plate_solve_single(unit, 1.0 / 8.0, 1);
  const auto b = fem::fd_plate_solve_single(doubled, 2.0 / 8.0, 1);
  CHECK(b.spectrum.values[0] ==
        doctest::Approx(a.spectrum.values[0] / 16.0).epsilon(0.01));
}

TEST_CASE("fd disk plate agrees with the bessel determinant") {
  fem::PlateDomain disk{fem::PlateDomain::Kind::disk, {}, 1.0, 2};
  const auto fd = fem::fd_plate_eigs(disk, 1.0 / 10.0, 1);
  const double exact = spectra::ball_plate_spectrum(2, 1.0, 1).values[0];
  CHECK(std::abs(fd.spectrum.values[0] - exact) / exact < 0.005);
}

TEST_CASE("fd 3-ball plate at coarse resolution") {
  fem::PlateDomain ball{fem::PlateDomain::Kind::disk, {}, 1.0, 3};
  const auto fd = fem::fd_plate_solve_single(ball, 1.0 / 6.0, 1);
  const double exact = spectra::ball_plate_spectrum(3, 1.0, 1).values[0];
  CHECK(std::abs(fd.spectrum.values[0] - exact) / exact < 0.02);
}

TEST_CASE("rayleigh_check ratios stay below one") {
  fem::PlateDomain square{fem::PlateDomain::Kind::box, {1.0, 1.0}, 0.0, 2};
  double prev_worst = 1e30;
  for (double h : {1.0 / 8.0, 1.0 / 16.0}) {
    const auto solve = fem::fd_plate_solve_single(square, h, 6);
    const auto ratios = fem::rayleigh_check(solve);
    REQUIRE(ratios.size() == 6);
    double worst = 0.0;
    for (double r : ratios) {
      CHECK(r > 0.0);
      CHECK(r <= 1.0 + 5.0 * h * h);
      worst = std::max(worst, std::abs(r - 1.0));
    }
    // refinement tightens the Cauchy-Schwarz slack
    CHECK(worst <= prev_worst);
    prev_worst = worst;
  }
}

TEST_CASE("rayleigh_check rejects degenerate eigenvector input") {
  fem::PlateDomain square{fem::PlateDomain::Kind::box, {1.0, 1.0}, 0.0, 2};
  auto solve = fem::fd_plate_solve_single(square, 1.0 / 8.0, 2);
  for (auto& v : solve.eigenvectors[0]) v = 0.0;  // constant-zero vector
  CHECK_THROWS_AS(fem::rayleigh_check(solve), Error);
}

TEST_CASE("fd grid gates") {
  fem::PlateDomain square{fem::PlateDomain::Kind::box, {1.0, 1.0}, 0.0, 2};
  CHECK_THROWS_AS(fem::fd_plate_solve_single(square, 1.0 / 4.0, 1), Error);
  fem::PlateDomain odd{fem::PlateDomain::Kind::box, {1.0, 0.95}, 0.0, 2};
  CHECK_THROWS_AS(fem::fd_plate_solve_single(odd, 1.0 / 16.0, 1), Error);
}
