#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "eigenbound/mesh_geometry.hpp"
#include "eigenbound/types.hpp"

namespace eigenbound::fem {

// Regular grid bookkeeping for the finite-difference plate solver.
struct FdGrid {
  int dim = 2;
  double h = 0.0;
  bool offset = false;  // node position (i + 0.5) h (disk grids)
  std::vector<std::array<int, 3>> nodes;
  std::map<std::array<int, 3>, int> index;
};

struct EigenSolveResult {
  Spectrum spectrum;  // for fd: Richardson-extrapolated values
  // columns are mass-orthonormal eigenvectors; FEM vectors are full vertex
  // length (zero on the boundary), FD vectors live on the fine grid
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> vector_values;  // raw eigenvalues matching the vectors
  std::vector<double> residual_norms;
  // fd extras
  std::vector<double> raw_coarse;
  std::vector<double> raw_fine;
  double measured_order = 0.0;
  FdGrid grid;
  std::vector<std::string> warnings;
};

// Smallest `count` eigenpairs of the interior-restricted P1 problem
// K v = lambda M v, solved densely through a Cholesky reduction.
EigenSolveResult fem_dirichlet_eigs(const geom::ImmersedMesh& mesh, int count);

struct PlateDomain {
  enum class Kind { box, disk } kind = Kind::box;
  std::vector<double> lengths;  // box
  double radius = 1.0;          // disk / ball
  int dim = 2;                  // disk kind: 2 (disk) or 3 (ball)
};

// Clamped-plate finite differences: 13/25-point bilaplacian stencil with
// mirror ghost closures on boxes; on disks exterior stencil points are
// closed by reflection across the circle with biquadratic interpolation.
// Solves at grid_h and grid_h/2 and reports the Richardson extrapolation.
EigenSolveResult fd_plate_eigs(const PlateDomain& domain, double grid_h, int count);
EigenSolveResult fd_plate_solve_single(const PlateDomain& domain, double h, int count);

// Per-mode (discrete Dirichlet energy) / Gamma_i^(1/2) ratios on plate
// eigenpairs; rejects inputs that are not mass-orthonormal.
std::vector<double> rayleigh_check(const EigenSolveResult& result);

}  // namespace eigenbound::fem
