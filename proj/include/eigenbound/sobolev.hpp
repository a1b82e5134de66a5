#pragma once

#include <optional>
#include <string>

#include "eigenbound/types.hpp"

namespace eigenbound::sobolev {

// Constants actually usable by the evaluators, after gates and presets.
struct DerivedConstants {
  std::optional<double> c1_effective;
  std::optional<double> c2;
  std::optional<double> cs;
  bool gate_ok = false;  // ||H||_{L^n} * C2 < 1
  std::string provenance = "user";
};

// C_s = (C2 / (1 - h_ln * C2) * 2(n-1)/(n-2))^2, defined for n >= 3 and
// only while the smallness gate h_ln * C2 < 1 holds.
DerivedConstants derive_cs(double c2, const CurvatureSummary& curv, int n);

// Sharp Euclidean Sobolev constant for (int |u|^{2n/(n-2)})^{(n-2)/n} <=
// C1 int |grad u|^2; valid as a preset for flat immersions only.
double talenti_c1(int n);

// Resolve a user SobolevConfig against a curvature summary. `flat` gates
// the talenti preset.
DerivedConstants resolve_constants(const SobolevConfig& cfg, const CurvatureSummary& curv, int n,
                                   bool flat);

// Remark-1.5 style check: lambda_1 >= Lambda * Vol^{-2/n}.
BoundReport faber_krahn_check(const Spectrum& spectrum, double volume, double lambda_constant);

}  // namespace eigenbound::sobolev
