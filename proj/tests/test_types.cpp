#include <doctest.h>

#include <cmath>

#include "eigenbound/types.hpp"

using namespace eigenbound;
using nlohmann::json;

namespace {
constexpr double kPi = 3.14159265358979323846;

Spectrum cube3() {
  return {Operator::laplacian, 3, 3, {3 * kPi * kPi, 6 * kPi * kPi}, "test fixture"};
}
}  // namespace

TEST_CASE("validate_spectrum accepts sorted positive values") {
  const Spectrum s = cube3();
  const Spectrum out = validate_spectrum(s);
  CHECK(out.values == s.values);
  CHECK(validate_spectrum({Operator::laplacian, 3, 3, {29.6088, 59.2176}, ""}).values.size() == 2);
}

TEST_CASE("validate_spectrum rejects bad inputs with typed codes") {
  Spectrum s = cube3();
  s.values = {5.0, 4.0};
  try {
    validate_spectrum(s);
    FAIL("expected unsorted_values");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsorted_values);
  }
  s.values = {};
  try {
    validate_spectrum(s);
    FAIL("expected empty_spectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_spectrum);
  }
  s.values = {-1.0, 2.0};
  try {
    validate_spectrum(s);
    FAIL("expected non_positive_eigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_positive_eigenvalue);
  }
}

TEST_CASE("scale_spectrum follows the dilation power laws") {
  Spectrum s{Operator::laplacian, 1, 1, {kPi * kPi}, ""};
  CHECK(scale_spectrum(s, 2.0).values[0] == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-15));

  Spectrum p{Operator::bilaplacian, 2, 2, {16.0}, ""};
  CHECK(scale_spectrum(p, 2.0).values[0] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(scale_spectrum(s, 1.0).values[0] == s.values[0]);
  CHECK_THROWS_AS(scale_spectrum(s, 0.0), Error);
  CHECK_THROWS_AS(scale_spectrum(s, -2.0), Error);
}

TEST_CASE("scale_spectrum composes multiplicatively") {
  Spectrum s{Operator::bilaplacian, 3, 3, {1.0, 7.5, 100.0}, ""};
  for (double a : {0.3, 2.0, 11.0})
    for (double b : {0.25, 1.7}) {
      const Spectrum two_step = scale_spectrum(scale_spectrum(s, a), b);
      const Spectrum one_step = scale_spectrum(s, a * b);
      for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(two_step.values[i] == doctest::Approx(one_step.values[i]).epsilon(1e-14));
    }
}

TEST_CASE("json round-trips are byte-stable after one normalization") {
  const json samples = {
      json(cube3()),
      json(GeometrySpec{BoxGeometry{{1.0, 2.0, 3.0}}}),
      json(GeometrySpec{BallGeometry{3, 1.5}}),
      json(GeometrySpec{CapGeometry{2, 1.0, 1.5707963267948966}}),
      json(CurvatureSummary{1.0, std::sqrt(2.0 * kPi), 2.0 * kPi}),
  };
  for (const auto& first : samples) {
    const std::string d1 = first.dump();
    const std::string d2 = json::parse(d1).dump();
    CHECK(d1 == d2);
  }

  const Spectrum s0 = cube3();
  const Spectrum s1 = json(s0).get<Spectrum>();
  CHECK(json(s0).dump() == json(s1).dump());

  SobolevConfig cfg;
  cfg.c1_talenti = true;
  cfg.c2 = 0.5;
  const SobolevConfig cfg2 = json(cfg).get<SobolevConfig>();
  CHECK(json(cfg).dump() == json(cfg2).dump());
  CHECK(json(cfg)["c1"]["preset"] == "talenti");

  BoundReport r;
  r.id = InequalityId::yang1;
  r.k = 3;
  r.lhs = 1.0;
  r.rhs = 2.0;
  r.holds = true;
  r.tightness = 0.5;
  r.implied_bound = 42.0;
  r.constants_used.effective_c = 4.0;
  const BoundReport r2 = json(r).get<BoundReport>();
  CHECK(json(r).dump() == json(r2).dump());
}

TEST_CASE("geometry json schema carries the documented field names") {
  const json jb = json(GeometrySpec{BoxGeometry{{1.0, 1.0}}});
  CHECK(jb["variant"] == "box");
  CHECK(jb.contains("lengths"));
  const json jc = json(GeometrySpec{CapGeometry{2, 1.0, 0.5}});
  CHECK(jc["variant"] == "spherical_cap");
  CHECK(jc.contains("sphere_dim"));
  CHECK(jc.contains("sphere_radius"));
  CHECK(jc.contains("cap_angle"));
  const json js = json(cube3());
  CHECK(js.contains("operator"));
  CHECK(js.contains("dim_n"));
  CHECK(js.contains("ambient_m"));
  CHECK(js.contains("values"));
  CHECK(js.contains("source"));
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS((GeometrySpec{CapGeometry{2, 1.0, 3.5}}.validate()), Error);
  CHECK_THROWS_AS((GeometrySpec{CapGeometry{2, 1.0, -0.1}}.validate()), Error);
  CHECK_THROWS_AS((GeometrySpec{BallGeometry{3, 0.0}}.validate()), Error);
  CHECK_THROWS_AS((GeometrySpec{BoxGeometry{{1.0, -1.0}}}.validate()), Error);
  CHECK_NOTHROW((GeometrySpec{BoxGeometry{{0.5}}}.validate()));
}

TEST_CASE("curvature summary obeys the Hoelder relation on samples") {
  // h_ln <= h_sup * volume^{1/n}, equality for constant |H|
  const double vol = 2.0 * kPi;
  const CurvatureSummary hemi{1.0, std::pow(vol, 0.5), vol};  // constant curvature
  CHECK(hemi.h_ln == doctest::Approx(hemi.h_sup * std::pow(hemi.volume, 0.5)).epsilon(1e-12));
}
