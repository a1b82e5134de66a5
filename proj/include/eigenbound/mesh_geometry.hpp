#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "eigenbound/types.hpp"

namespace eigenbound::geom {

// Simplicial mesh of an n-manifold (with boundary) immersed in R^m.
struct ImmersedMesh {
  int intrinsic_dim = 2;  // n
  int ambient_dim = 3;    // m
  std::vector<double> vertices;        // ambient_dim doubles per vertex
  std::vector<std::vector<int>> cells; // n+1 vertex ids per cell
  std::vector<bool> boundary_vertex;   // derived

  int vertex_count() const { return (int)(vertices.size() / ambient_dim); }
  const double* vertex(int v) const { return &vertices[(std::size_t)v * ambient_dim]; }
  int interior_count() const;
};

// Symmetric sparse matrix with deterministic (ordered) row storage.
struct SparseSym {
  int n = 0;
  std::vector<std::map<int, double>> rows;

  explicit SparseSym(int size = 0) : n(size), rows(size) {}
  void add(int i, int j, double v) { rows[i][j] += v; }
  double row_sum(int i) const;
  double total() const;
  std::vector<double> matvec(const std::vector<double>& x) const;
  double quad_form(const std::vector<double>& x) const;  // x^T A x
};

// P1 Galerkin stiffness (cotangent weights on triangles) and mass.
struct DiscreteOperators {
  SparseSym stiffness;
  SparseSym mass;
  std::vector<double> lumped_mass;
  double volume = 0.0;
};

// Per-vertex mean curvature vectors via the identity (Laplace-Beltrami of
// the coordinate functions) = n H; interior vertices only.
struct MeshCurvature {
  std::vector<std::array<double, 3>> h_vectors;  // padded to 3 components
  std::vector<int> vertex_ids;                   // interior vertex per row
  CurvatureSummary summary;
};

ImmersedMesh load_mesh(const std::string& path, int intrinsic_dim);
void save_mesh(const ImmersedMesh& mesh, const std::string& path);

// Fixture generators.
ImmersedMesh make_icosphere(int subdivisions, double radius);
ImmersedMesh make_grid(int cells_x, int cells_y, int ambient_dim);  // unit square
ImmersedMesh make_tetgrid(int cells_per_side, double edge);         // cube
ImmersedMesh make_disk(int rings, double radius);
ImmersedMesh make_hemisphere(int rings, double radius);

void validate_mesh(const ImmersedMesh& mesh);
DiscreteOperators assemble_operators(const ImmersedMesh& mesh);
MeshCurvature discrete_mean_curvature(const ImmersedMesh& mesh, const DiscreteOperators& ops);

// Closed-form curvature data for box, ball and spherical cap geometries.
CurvatureSummary curvature_summary_analytic(const GeometrySpec& geom);

}  // namespace eigenbound::geom
