#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eigenbound/error.hpp"

namespace eigenbound {

enum class Operator { laplacian, bilaplacian };

const char* operator_name(Operator op);
Operator operator_from_name(const std::string& name);

// Ordered, multiplicity-expanded eigenvalue list for one operator on one
// domain. Dirichlet Laplacian values are the lambda_i, bilaplacian (clamped
// plate) values the Gamma_i.
struct Spectrum {
  Operator op = Operator::laplacian;
  int dim_n = 2;      // intrinsic dimension of the underlying manifold
  int ambient_m = 0;  // immersion codomain dimension, 0 if abstract
  std::vector<double> values;
  std::string source;
};

// Throws on violated invariants, otherwise returns the input unchanged.
Spectrum validate_spectrum(const Spectrum& s);

// Spectrum of the domain dilated by `factor`: Laplacian values scale by
// factor^-2, bilaplacian by factor^-4.
Spectrum scale_spectrum(const Spectrum& s, double factor);

struct BoxGeometry {
  std::vector<double> lengths;
};

struct BallGeometry {
  int dim = 3;
  double radius = 1.0;
};

struct CapGeometry {
  int sphere_dim = 2;       // n: the cap lives in S^n(R) in R^{n+1}
  double sphere_radius = 1.0;
  double cap_angle = 1.0;   // polar opening angle, in (0, pi)
};

struct MeshGeometry {
  std::string path;
  int intrinsic_dim = 2;
};

struct GeometrySpec {
  std::variant<BoxGeometry, BallGeometry, CapGeometry, MeshGeometry> shape;

  int intrinsic_dim() const;
  int ambient_dim() const;  // 0 for mesh variant until loaded
  std::string variant_name() const;
  void validate() const;
};

// H0 = sup |H|, the L^n curvature norm, and the Riemannian volume of the
// domain. h_ln is invariant under global dilation.
struct CurvatureSummary {
  double h_sup = 0.0;
  double h_ln = 0.0;
  double volume = 0.0;
};

// User-facing Sobolev configuration. Neither constant has a baked-in numeric
// default; "talenti" is the sharp Euclidean preset for flat immersions.
struct SobolevConfig {
  std::optional<double> c1_value;
  bool c1_talenti = false;
  std::optional<double> c2;
};

enum class InequalityId {
  // Dirichlet family
  ppw_gap,
  hile_protter,
  yang1,
  yang2,
  chen_cheng,
  thm_dirichlet_sobolev,
  thm_dirichlet_ms,
  // clamped plate family
  ppw_plate,
  hile_yeh,
  chen_qian_hook,
  cheng_yang_plate,
  cim_plate,
  wang_xia_plate,
  thm_plate_sobolev,
  thm_plate_ms,
  // Remark-1.5 consequence, reported through the same structure
  faber_krahn,
};

const char* inequality_name(InequalityId id);
InequalityId inequality_from_name(const std::string& name);
std::vector<InequalityId> all_inequalities();

struct ConstantsUsed {
  std::optional<double> h_sup;
  std::optional<double> h_ln;
  std::optional<double> volume;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> cs;
  std::optional<double> effective_c;
};

// Per-(inequality, k) verdict. All inequalities are normalized to the
// convention holds <=> lhs <= rhs, so tightness -> 1 means saturation.
struct BoundReport {
  InequalityId id = InequalityId::yang1;
  int k = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  std::optional<double> tightness;      // lhs/rhs when rhs > 0
  std::optional<double> implied_bound;  // largest admissible next eigenvalue
  ConstantsUsed constants_used;
  std::vector<std::string> warnings;
};

void to_json(nlohmann::json& j, const Spectrum& s);
void from_json(const nlohmann::json& j, Spectrum& s);
void to_json(nlohmann::json& j, const GeometrySpec& g);
void from_json(const nlohmann::json& j, GeometrySpec& g);
void to_json(nlohmann::json& j, const CurvatureSummary& c);
void from_json(const nlohmann::json& j, CurvatureSummary& c);
void to_json(nlohmann::json& j, const SobolevConfig& c);
void from_json(const nlohmann::json& j, SobolevConfig& c);
void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

}  // namespace eigenbound
