#include "eigenbound/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace eigenbound {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::non_positive_eigenvalue: return "non_positive_eigenvalue";
    case ErrorCode::unsorted_values: return "unsorted_values";
    case ErrorCode::empty_spectrum: return "empty_spectrum";
    case ErrorCode::non_positive_factor: return "non_positive_factor";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::convergence_failure: return "convergence_failure";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::bracket_exhausted: return "bracket_exhausted";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::non_manifold: return "non_manifold";
    case ErrorCode::degenerate_cell: return "degenerate_cell";
    case ErrorCode::empty_interior: return "empty_interior";
    case ErrorCode::unsupported_geometry: return "unsupported_geometry";
    case ErrorCode::gate_violation: return "gate_violation";
    case ErrorCode::dimension_too_low: return "dimension_too_low";
    case ErrorCode::missing_curvature: return "missing_curvature";
    case ErrorCode::missing_sobolev: return "missing_sobolev";
    case ErrorCode::operator_mismatch: return "operator_mismatch";
    case ErrorCode::insufficient_spectrum: return "insufficient_spectrum";
    case ErrorCode::negative_discriminant: return "negative_discriminant";
    case ErrorCode::no_violation_found: return "no_violation_found";
    case ErrorCode::too_many_dofs: return "too_many_dofs";
    case ErrorCode::singular_mass: return "singular_mass";
    case ErrorCode::grid_too_coarse: return "grid_too_coarse";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

const char* operator_name(Operator op) {
  return op == Operator::laplacian ? "laplacian" : "bilaplacian";
}

Operator operator_from_name(const std::string& name) {
  if (name == "laplacian") return Operator::laplacian;
  if (name == "bilaplacian") return Operator::bilaplacian;
  fail(ErrorCode::parse_error, "unknown operator: " + name);
}

Spectrum validate_spectrum(const Spectrum& s) {
  if (s.values.empty()) fail(ErrorCode::empty_spectrum, "spectrum has no values");
  if (s.dim_n < 1) fail(ErrorCode::invalid_config, "dim_n must be >= 1");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!(s.values[i] > 0.0) || !std::isfinite(s.values[i])) {
      std::ostringstream os;
      os << "eigenvalue " << i + 1 << " is not a positive finite number";
      fail(ErrorCode::non_positive_eigenvalue, os.str());
    }
    if (i > 0 && s.values[i] < s.values[i - 1]) {
      std::ostringstream os;
      os << "values out of order at position " << i + 1;
      fail(ErrorCode::unsorted_values, os.str());
    }
  }
  return s;
}

Spectrum scale_spectrum(const Spectrum& s, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    fail(ErrorCode::non_positive_factor, "dilation factor must be positive");
  const double power = (s.op == Operator::laplacian) ? -2.0 : -4.0;
  const double mult = std::pow(factor, power);
  Spectrum out = s;
  for (double& v : out.values) v *= mult;
  return out;
}

int GeometrySpec::intrinsic_dim() const {
  if (const auto* b = std::get_if<BoxGeometry>(&shape)) return (int)b->lengths.size();
  if (const auto* b = std::get_if<BallGeometry>(&shape)) return b->dim;
  if (const auto* c = std::get_if<CapGeometry>(&shape)) return c->sphere_dim;
  return std::get<MeshGeometry>(shape).intrinsic_dim;
}

int GeometrySpec::ambient_dim() const {
  if (const auto* b = std::get_if<BoxGeometry>(&shape)) return (int)b->lengths.size();
  if (const auto* b = std::get_if<BallGeometry>(&shape)) return b->dim;
  if (const auto* c = std::get_if<CapGeometry>(&shape)) return c->sphere_dim + 1;
  return 0;  // determined when the mesh file is loaded
}

std::string GeometrySpec::variant_name() const {
  if (std::holds_alternative<BoxGeometry>(shape)) return "box";
  if (std::holds_alternative<BallGeometry>(shape)) return "euclidean_ball";
  if (std::holds_alternative<CapGeometry>(shape)) return "spherical_cap";
  return "mesh";
}

void GeometrySpec::validate() const {
  if (const auto* b = std::get_if<BoxGeometry>(&shape)) {
    if (b->lengths.empty()) fail(ErrorCode::invalid_config, "box needs at least one length");
    for (double L : b->lengths)
      if (!(L > 0.0)) fail(ErrorCode::invalid_config, "box lengths must be positive");
    return;
  }
  if (const auto* b = std::get_if<BallGeometry>(&shape)) {
    if (b->dim < 2) fail(ErrorCode::invalid_config, "ball dimension must be >= 2");
    if (!(b->radius > 0.0)) fail(ErrorCode::invalid_config, "ball radius must be positive");
    return;
  }
  if (const auto* c = std::get_if<CapGeometry>(&shape)) {
    if (c->sphere_dim < 2) fail(ErrorCode::invalid_config, "sphere dimension must be >= 2");
    if (!(c->sphere_radius > 0.0))
      fail(ErrorCode::invalid_config, "sphere radius must be positive");
    if (!(c->cap_angle > 0.0) || !(c->cap_angle < M_PI))
      fail(ErrorCode::invalid_config, "cap angle must lie in (0, pi)");
    return;
  }
  const auto& m = std::get<MeshGeometry>(shape);
  if (m.path.empty()) fail(ErrorCode::invalid_config, "mesh path is empty");
  if (m.intrinsic_dim < 1) fail(ErrorCode::invalid_config, "mesh intrinsic_dim must be >= 1");
}

const char* inequality_name(InequalityId id) {
  switch (id) {
    case InequalityId::ppw_gap: return "ppw_gap";
    case InequalityId::hile_protter: return "hile_protter";
    case InequalityId::yang1: return "yang1";
    case InequalityId::yang2: return "yang2";
    case InequalityId::chen_cheng: return "chen_cheng";
    case InequalityId::thm_dirichlet_sobolev: return "thm_dirichlet_sobolev";
    case InequalityId::thm_dirichlet_ms: return "thm_dirichlet_ms";
    case InequalityId::ppw_plate: return "ppw_plate";
    case InequalityId::hile_yeh: return "hile_yeh";
    case InequalityId::chen_qian_hook: return "chen_qian_hook";
    case InequalityId::cheng_yang_plate: return "cheng_yang_plate";
    case InequalityId::cim_plate: return "cim_plate";
    case InequalityId::wang_xia_plate: return "wang_xia_plate";
    case InequalityId::thm_plate_sobolev: return "thm_plate_sobolev";
    case InequalityId::thm_plate_ms: return "thm_plate_ms";
    case InequalityId::faber_krahn: return "faber_krahn";
  }
  return "unknown";
}

std::vector<InequalityId> all_inequalities() {
  return {InequalityId::ppw_gap,          InequalityId::hile_protter,
          InequalityId::yang1,            InequalityId::yang2,
          InequalityId::chen_cheng,       InequalityId::thm_dirichlet_sobolev,
          InequalityId::thm_dirichlet_ms, InequalityId::ppw_plate,
          InequalityId::hile_yeh,         InequalityId::chen_qian_hook,
          InequalityId::cheng_yang_plate, InequalityId::cim_plate,
          InequalityId::wang_xia_plate,   InequalityId::thm_plate_sobolev,
          InequalityId::thm_plate_ms};
}

InequalityId inequality_from_name(const std::string& name) {
  for (InequalityId id : all_inequalities())
    if (name == inequality_name(id)) return id;
  if (name == "faber_krahn") return InequalityId::faber_krahn;
  fail(ErrorCode::parse_error, "unknown inequality id: " + name);
}

using nlohmann::json;

void to_json(json& j, const Spectrum& s) {
  j = json{{"operator", operator_name(s.op)},
           {"dim_n", s.dim_n},
           {"ambient_m", s.ambient_m},
           {"values", s.values},
           {"source", s.source}};
}

void from_json(const json& j, Spectrum& s) {
  s.op = operator_from_name(j.at("operator").get<std::string>());
  s.dim_n = j.at("dim_n").get<int>();
  s.ambient_m = j.value("ambient_m", 0);
  s.values = j.at("values").get<std::vector<double>>();
  s.source = j.value("source", "");
}

void to_json(json& j, const GeometrySpec& g) {
  j = json{{"variant", g.variant_name()}};
  if (const auto* b = std::get_if<BoxGeometry>(&g.shape)) {
    j["lengths"] = b->lengths;
  } else if (const auto* b = std::get_if<BallGeometry>(&g.shape)) {
    j["n"] = b->dim;
    j["radius"] = b->radius;
  } else if (const auto* c = std::get_if<CapGeometry>(&g.shape)) {
    j["sphere_dim"] = c->sphere_dim;
    j["sphere_radius"] = c->sphere_radius;
    j["cap_angle"] = c->cap_angle;
  } else {
    const auto& m = std::get<MeshGeometry>(g.shape);
    j["path"] = m.path;
    j["intrinsic_dim"] = m.intrinsic_dim;
  }
}

void from_json(const json& j, GeometrySpec& g) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "box") {
    g.shape = BoxGeometry{j.at("lengths").get<std::vector<double>>()};
  } else if (v == "euclidean_ball") {
    g.shape = BallGeometry{j.at("n").get<int>(), j.at("radius").get<double>()};
  } else if (v == "spherical_cap") {
    g.shape = CapGeometry{j.at("sphere_dim").get<int>(), j.at("sphere_radius").get<double>(),
                          j.at("cap_angle").get<double>()};
  } else if (v == "mesh") {
    g.shape = MeshGeometry{j.at("path").get<std::string>(), j.at("intrinsic_dim").get<int>()};
  } else {
    fail(ErrorCode::parse_error, "unknown geometry variant: " + v);
  }
  g.validate();
}

void to_json(json& j, const CurvatureSummary& c) {
  j = json{{"h_sup", c.h_sup}, {"h_ln", c.h_ln}, {"volume", c.volume}};
}

void from_json(const json& j, CurvatureSummary& c) {
  c.h_sup = j.at("h_sup").get<double>();
  c.h_ln = j.at("h_ln").get<double>();
  c.volume = j.at("volume").get<double>();
}

void to_json(json& j, const SobolevConfig& c) {
  j = json::object();
  if (c.c1_talenti)
    j["c1"] = json{{"preset", "talenti"}};
  else if (c.c1_value)
    j["c1"] = json{{"value", *c.c1_value}};
  if (c.c2) j["c2"] = json{{"value", *c.c2}};
}

void from_json(const json& j, SobolevConfig& c) {
  c = SobolevConfig{};
  if (j.contains("c1")) {
    const auto& c1 = j.at("c1");
    if (c1.contains("preset")) {
      const std::string p = c1.at("preset").get<std::string>();
      if (p != "talenti") fail(ErrorCode::parse_error, "unknown c1 preset: " + p);
      c.c1_talenti = true;
    } else {
      c.c1_value = c1.at("value").get<double>();
      if (!(*c.c1_value > 0.0)) fail(ErrorCode::invalid_config, "c1 must be positive");
    }
  }
  if (j.contains("c2")) {
    c.c2 = j.at("c2").at("value").get<double>();
    if (!(*c.c2 > 0.0)) fail(ErrorCode::invalid_config, "c2 must be positive");
  }
}

static void put_optional(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

void to_json(json& j, const BoundReport& r) {
  j = json{{"inequality_id", inequality_name(r.id)},
           {"k", r.k},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"holds", r.holds}};
  put_optional(j, "tightness", r.tightness);
  put_optional(j, "implied_bound", r.implied_bound);
  json cu = json::object();
  put_optional(cu, "h_sup", r.constants_used.h_sup);
  put_optional(cu, "h_ln", r.constants_used.h_ln);
  put_optional(cu, "volume", r.constants_used.volume);
  put_optional(cu, "c1", r.constants_used.c1);
  put_optional(cu, "c2", r.constants_used.c2);
  put_optional(cu, "cs", r.constants_used.cs);
  put_optional(cu, "effective_c", r.constants_used.effective_c);
  j["constants_used"] = cu;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
}

static std::optional<double> get_optional(const json& j, const char* key) {
  if (j.contains(key)) return j.at(key).get<double>();
  return std::nullopt;
}

void from_json(const json& j, BoundReport& r) {
  r.id = inequality_from_name(j.at("inequality_id").get<std::string>());
  r.k = j.at("k").get<int>();
  r.lhs = j.at("lhs").get<double>();
  // infinite sides (degenerate clusters) serialize as null
  r.rhs = j.at("rhs").is_null() ? std::numeric_limits<double>::infinity()
                                : j.at("rhs").get<double>();
  r.holds = j.at("holds").get<bool>();
  r.tightness = get_optional(j, "tightness");
  r.implied_bound = get_optional(j, "implied_bound");
  r.constants_used = ConstantsUsed{};
  if (j.contains("constants_used")) {
    const auto& cu = j.at("constants_used");
    r.constants_used.h_sup = get_optional(cu, "h_sup");
    r.constants_used.h_ln = get_optional(cu, "h_ln");
    r.constants_used.volume = get_optional(cu, "volume");
    r.constants_used.c1 = get_optional(cu, "c1");
    r.constants_used.c2 = get_optional(cu, "c2");
    r.constants_used.cs = get_optional(cu, "cs");
    r.constants_used.effective_c = get_optional(cu, "effective_c");
  }
  r.warnings.clear();
  if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
}

}  // namespace eigenbound
