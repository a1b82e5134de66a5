#include "eigenbound/mesh_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "eigenbound/special_functions.hpp"

namespace eigenbound::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;

double det_small(const std::vector<double>& g, int n) {
  if (n == 1) return g[0];
  if (n == 2) return g[0] * g[3] - g[1] * g[2];
  return g[0] * (g[4] * g[8] - g[5] * g[7]) - g[1] * (g[3] * g[8] - g[5] * g[6]) +
         g[2] * (g[3] * g[7] - g[4] * g[6]);
}

// Inverse of a small SPD matrix (n <= 3).
std::vector<double> inv_small(const std::vector<double>& g, int n, double det) {
  std::vector<double> inv(n * n, 0.0);
  if (n == 1) {
    inv[0] = 1.0 / g[0];
  } else if (n == 2) {
    inv[0] = g[3] / det;
    inv[3] = g[0] / det;
    inv[1] = -g[1] / det;
    inv[2] = -g[2] / det;
  } else {
    inv[0] = (g[4] * g[8] - g[5] * g[7]) / det;
    inv[1] = (g[2] * g[7] - g[1] * g[8]) / det;
    inv[2] = (g[1] * g[5] - g[2] * g[4]) / det;
    inv[3] = (g[5] * g[6] - g[3] * g[8]) / det;
    inv[4] = (g[0] * g[8] - g[2] * g[6]) / det;
    inv[5] = (g[2] * g[3] - g[0] * g[5]) / det;
    inv[6] = (g[3] * g[7] - g[4] * g[6]) / det;
    inv[7] = (g[1] * g[6] - g[0] * g[7]) / det;
    inv[8] = (g[0] * g[4] - g[1] * g[3]) / det;
  }
  return inv;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

int ImmersedMesh::interior_count() const {
  int c = 0;
  for (bool b : boundary_vertex)
    if (!b) ++c;
  return c;
}

double SparseSym::row_sum(int i) const {
  double s = 0.0;
  for (const auto& [j, v] : rows[i]) s += v;
  return s;
}

double SparseSym::total() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += row_sum(i);
  return s;
}

std::vector<double> SparseSym::matvec(const std::vector<double>& x) const {
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [j, v] : rows[i]) s += v * x[j];
    y[i] = s;
  }
  return y;
}

double SparseSym::quad_form(const std::vector<double>& x) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : rows[i]) s += x[i] * v * x[j];
  return s;
}

namespace {

void derive_boundary(ImmersedMesh& mesh) {
  // facets = (n-1)-subsimplices; interior facets are shared by exactly 2 cells
  std::map<std::vector<int>, int> facet_count;
  const int n = mesh.intrinsic_dim;
  for (const auto& cell : mesh.cells) {
    for (int drop = 0; drop <= n; ++drop) {
      std::vector<int> facet;
      facet.reserve(n);
      for (int i = 0; i <= n; ++i)
        if (i != drop) facet.push_back(cell[i]);
      std::sort(facet.begin(), facet.end());
      ++facet_count[facet];
    }
  }
  mesh.boundary_vertex.assign(mesh.vertex_count(), false);
  for (const auto& [facet, count] : facet_count) {
    if (count > 2) fail(ErrorCode::non_manifold, "facet shared by more than two cells");
    if (count == 1)
      for (int v : facet) mesh.boundary_vertex[v] = true;
  }
}

// Edge vectors, Gram determinant, unsigned volume of one cell.
double cell_volume(const ImmersedMesh& mesh, const std::vector<int>& cell,
                   std::vector<double>* gram = nullptr) {
  const int n = mesh.intrinsic_dim;
  const int m = mesh.ambient_dim;
  std::vector<double> e((std::size_t)n * m);
  const double* v0 = mesh.vertex(cell[0]);
  for (int i = 0; i < n; ++i) {
    const double* vi = mesh.vertex(cell[i + 1]);
    for (int a = 0; a < m; ++a) e[(std::size_t)i * m + a] = vi[a] - v0[a];
  }
  std::vector<double> g(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) s += e[(std::size_t)i * m + a] * e[(std::size_t)j * m + a];
      g[i * n + j] = s;
    }
  if (gram) *gram = g;
  const double dg = det_small(g, n);
  if (dg <= 0.0) return 0.0;
  return std::sqrt(dg) / factorial(n);
}

// Signed volume for full-dimensional cells (n == m).
double signed_cell_volume(const ImmersedMesh& mesh, const std::vector<int>& cell) {
  const int n = mesh.intrinsic_dim;
  std::vector<double> e((std::size_t)n * n);
  const double* v0 = mesh.vertex(cell[0]);
  for (int i = 0; i < n; ++i) {
    const double* vi = mesh.vertex(cell[i + 1]);
    for (int a = 0; a < n; ++a) e[(std::size_t)i * n + a] = vi[a] - v0[a];
  }
  return det_small(e, n) / factorial(n);
}

void check_orientation_consistency(const ImmersedMesh& mesh) {
  if (mesh.intrinsic_dim != 2) return;
  // a consistently oriented triangle pair traverses a shared edge in
  // opposite directions; a flipped cell shows up as a repeated direction
  std::map<std::pair<int, int>, int> directed;
  for (const auto& cell : mesh.cells) {
    for (int i = 0; i < 3; ++i) {
      const int a = cell[i];
      const int b = cell[(i + 1) % 3];
      if (++directed[{a, b}] > 1)
        fail(ErrorCode::degenerate_cell, "inverted cell: repeated directed edge");
    }
  }
}

}  // namespace

void validate_mesh(const ImmersedMesh& mesh) {
  const int n = mesh.intrinsic_dim;
  const int m = mesh.ambient_dim;
  if (n < 1 || m < n) fail(ErrorCode::parse_error, "bad mesh dimensions");
  const int nv = mesh.vertex_count();

  // manifoldness first: interior facets belong to exactly two cells
  {
    std::map<std::vector<int>, int> facet_count;
    for (const auto& cell : mesh.cells) {
      if ((int)cell.size() != n + 1) fail(ErrorCode::parse_error, "cell with wrong vertex count");
      for (int drop = 0; drop <= n; ++drop) {
        std::vector<int> facet;
        for (int i = 0; i <= n; ++i)
          if (i != drop) facet.push_back(cell[i]);
        std::sort(facet.begin(), facet.end());
        if (++facet_count[facet] > 2)
          fail(ErrorCode::non_manifold, "facet shared by more than two cells");
      }
    }
  }

  double scale = 0.0;
  for (const auto& cell : mesh.cells) {
    if ((int)cell.size() != n + 1) fail(ErrorCode::parse_error, "cell with wrong vertex count");
    for (int v : cell)
      if (v < 0 || v >= nv) fail(ErrorCode::parse_error, "cell references missing vertex");
    double longest = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        double d2 = 0.0;
        for (int a = 0; a < m; ++a) {
          const double d = mesh.vertex(cell[i])[a] - mesh.vertex(cell[j])[a];
          d2 += d * d;
        }
        longest = std::max(longest, std::sqrt(d2));
      }
    scale = std::max(scale, longest);
    const double vol = cell_volume(mesh, cell);
    if (vol <= 1e-12 * std::pow(longest, n))
      fail(ErrorCode::degenerate_cell, "cell with non-positive volume");
    if (n == m && signed_cell_volume(mesh, cell) <= 0.0)
      fail(ErrorCode::degenerate_cell, "inverted cell: negative orientation");
  }
  if (n == 2 && n != m) check_orientation_consistency(mesh);
}

DiscreteOperators assemble_operators(const ImmersedMesh& mesh) {
  const int n = mesh.intrinsic_dim;
  const int nv = mesh.vertex_count();
  DiscreteOperators ops{SparseSym(nv), SparseSym(nv), std::vector<double>(nv, 0.0), 0.0};

  for (const auto& cell : mesh.cells) {
    std::vector<double> g;
    const double vol = cell_volume(mesh, cell, &g);
    if (vol <= 0.0) fail(ErrorCode::degenerate_cell, "zero-volume cell during assembly");
    const double dg = det_small(g, n);
    const auto ginv = inv_small(g, n, dg);

    // grad(lambda_i) . grad(lambda_j) = (G^-1)_{ij} for i,j >= 1;
    // row/column 0 completes via grad(lambda_0) = -sum grad(lambda_i)
    std::vector<double> grad_dot((n + 1) * (n + 1), 0.0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) grad_dot[i * (n + 1) + j] = ginv[(i - 1) * n + (j - 1)];
    for (int i = 1; i <= n; ++i) {
      double s = 0.0;
      for (int j = 1; j <= n; ++j) s += grad_dot[i * (n + 1) + j];
      grad_dot[i * (n + 1)] = grad_dot[i] = -s;
    }
    double s00 = 0.0;
    for (int i = 1; i <= n; ++i) s00 -= grad_dot[i];
    grad_dot[0] = s00;

    const double mass_off = vol / ((n + 1.0) * (n + 2.0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        ops.stiffness.add(cell[i], cell[j], vol * grad_dot[i * (n + 1) + j]);
        ops.mass.add(cell[i], cell[j], mass_off * (i == j ? 2.0 : 1.0));
      }

    if (n == 2) {
      // mixed Voronoi areas: pointwise curvature from the cotangent
      // Laplacian needs them to track |H| on irregular-valence meshes
      double cot[3];
      bool obtuse = false;
      int obtuse_at = 0;
      for (int i = 0; i < 3; ++i) {
        // cot(angle at i) = (e_ij . e_ik) / (2 area)
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        double dot = 0.0;
        const int m = mesh.ambient_dim;
        for (int a = 0; a < m; ++a) {
          const double ej = mesh.vertex(cell[j])[a] - mesh.vertex(cell[i])[a];
          const double ek = mesh.vertex(cell[k])[a] - mesh.vertex(cell[i])[a];
          dot += ej * ek;
        }
        cot[i] = dot / (2.0 * vol);
        if (cot[i] < 0.0) {
          obtuse = true;
          obtuse_at = i;
        }
      }
      if (obtuse) {
        for (int i = 0; i < 3; ++i)
          ops.lumped_mass[cell[i]] += (i == obtuse_at) ? 0.5 * vol : 0.25 * vol;
      } else {
        for (int i = 0; i < 3; ++i) {
          const int j = (i + 1) % 3, k = (i + 2) % 3;
          double lj2 = 0.0, lk2 = 0.0;  // squared lengths of edges opposite j, k
          const int m = mesh.ambient_dim;
          for (int a = 0; a < m; ++a) {
            const double ej = mesh.vertex(cell[k])[a] - mesh.vertex(cell[i])[a];
            const double ek = mesh.vertex(cell[j])[a] - mesh.vertex(cell[i])[a];
            lj2 += ej * ej;
            lk2 += ek * ek;
          }
          ops.lumped_mass[cell[i]] += 0.125 * (lj2 * cot[j] + lk2 * cot[k]);
        }
      }
    } else {
      for (int i = 0; i <= n; ++i) ops.lumped_mass[cell[i]] += vol / (n + 1.0);
    }
    ops.volume += vol;
  }
  return ops;
}

MeshCurvature discrete_mean_curvature(const ImmersedMesh& mesh, const DiscreteOperators& ops) {
  const int n = mesh.intrinsic_dim;
  const int m = mesh.ambient_dim;
  const int nv = mesh.vertex_count();
  if (mesh.interior_count() == 0)
    fail(ErrorCode::empty_interior, "mesh has no interior vertices");

  // H = (Laplace-Beltrami X)/n with the lumped mass; K approximates the
  // negative of the weak Laplacian, hence the sign
  std::vector<std::vector<double>> lap(m);
  for (int a = 0; a < m; ++a) {
    std::vector<double> coord(nv);
    for (int v = 0; v < nv; ++v) coord[v] = mesh.vertex(v)[a];
    lap[a] = ops.stiffness.matvec(coord);
  }

  MeshCurvature out;
  double h_sup = 0.0;
  double hn_integral = 0.0;
  for (int v = 0; v < nv; ++v) {
    if (mesh.boundary_vertex[v]) continue;
    std::array<double, 3> h{0.0, 0.0, 0.0};
    double norm2 = 0.0;
    for (int a = 0; a < m; ++a) {
      const double ha = -lap[a][v] / (ops.lumped_mass[v] * n);
      if (a < 3) h[a] = ha;
      norm2 += ha * ha;
    }
    const double hn = std::sqrt(norm2);
    out.h_vectors.push_back(h);
    out.vertex_ids.push_back(v);
    h_sup = std::max(h_sup, hn);
    hn_integral += std::pow(hn, n) * ops.lumped_mass[v];
  }
  out.summary.h_sup = h_sup;
  out.summary.h_ln = std::pow(hn_integral, 1.0 / n);
  out.summary.volume = ops.volume;
  return out;
}

CurvatureSummary curvature_summary_analytic(const GeometrySpec& geom) {
  geom.validate();
  if (const auto* b = std::get_if<BoxGeometry>(&geom.shape)) {
    double vol = 1.0;
    for (double L : b->lengths) vol *= L;
    return {0.0, 0.0, vol};
  }
  if (const auto* b = std::get_if<BallGeometry>(&geom.shape)) {
    const double n = b->dim;
    const double vol =
        std::pow(kPi, 0.5 * n) * std::pow(b->radius, n) / sf::gamma_fn(0.5 * n + 1.0);
    return {0.0, 0.0, vol};
  }
  if (const auto* c = std::get_if<CapGeometry>(&geom.shape)) {
    const int n = c->sphere_dim;
    const double R = c->sphere_radius;
    // area of the unit S^{n-1} times int_0^{theta0} sin^{n-1}
    const double omega = 2.0 * std::pow(kPi, 0.5 * n) / sf::gamma_fn(0.5 * n);
    std::vector<double> x, w;
    sf::gauss_legendre(64, x, w);
    double integral = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double theta = 0.5 * c->cap_angle * (x[i] + 1.0);
      integral += w[i] * std::pow(std::sin(theta), n - 1);
    }
    integral *= 0.5 * c->cap_angle;
    const double vol = std::pow(R, n) * omega * integral;
    return {1.0 / R, std::pow(vol, 1.0 / n) / R, vol};
  }
  fail(ErrorCode::unsupported_geometry,
       "analytic curvature exists only for box, ball and cap; use the discrete path for meshes");
}

// ---------------------------------------------------------------------------
// readers / writers / generators

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int obj_index(const std::string& tok, int nv) {
  // OBJ faces may carry v/vt/vn; the vertex id is the first field, 1-based
  const auto slash = tok.find('/');
  const std::string head = (slash == std::string::npos) ? tok : tok.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (...) {
    fail(ErrorCode::parse_error, "bad OBJ face index: " + tok);
  }
  if (idx < 0) idx = nv + idx + 1;
  if (idx < 1 || idx > nv) fail(ErrorCode::parse_error, "OBJ face index out of range");
  return idx - 1;
}

ImmersedMesh load_obj(std::istream& in, int intrinsic_dim) {
  ImmersedMesh mesh;
  mesh.intrinsic_dim = intrinsic_dim;
  mesh.ambient_dim = 3;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "v") {
      if (toks.size() < 4) fail(ErrorCode::parse_error, "OBJ vertex with fewer than 3 coords");
      for (int a = 1; a <= 3; ++a) mesh.vertices.push_back(std::stod(toks[a]));
    } else if (toks[0] == "f") {
      if (toks.size() != 4) fail(ErrorCode::parse_error, "only triangular OBJ faces supported");
      const int nv = mesh.vertex_count();
      mesh.cells.push_back({obj_index(toks[1], nv), obj_index(toks[2], nv), obj_index(toks[3], nv)});
    }
  }
  return mesh;
}

ImmersedMesh load_off(std::istream& in, int intrinsic_dim) {
  std::string header;
  if (!(in >> header) || header != "OFF") fail(ErrorCode::parse_error, "missing OFF header");
  int nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne)) fail(ErrorCode::parse_error, "bad OFF counts");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = intrinsic_dim;
  mesh.ambient_dim = 3;
  mesh.vertices.resize((std::size_t)nv * 3);
  for (int v = 0; v < nv; ++v)
    for (int a = 0; a < 3; ++a)
      if (!(in >> mesh.vertices[(std::size_t)v * 3 + a]))
        fail(ErrorCode::parse_error, "truncated OFF vertex list");
  for (int f = 0; f < nf; ++f) {
    int arity = 0;
    if (!(in >> arity) || arity != 3)
      fail(ErrorCode::parse_error, "only triangular OFF faces supported");
    std::vector<int> cell(3);
    for (int i = 0; i < 3; ++i) {
      if (!(in >> cell[i]) || cell[i] < 0 || cell[i] >= nv)
        fail(ErrorCode::parse_error, "OFF face index out of range");
    }
    mesh.cells.push_back(cell);
  }
  return mesh;
}

// plain text tetrahedra: header "tet m", vertex lines "v x1 .. xm",
// cell lines "c i j k l" (0-based)
ImmersedMesh load_tet(std::istream& in) {
  std::string tag;
  int m = 0;
  if (!(in >> tag >> m) || tag != "tet" || m < 3)
    fail(ErrorCode::parse_error, "missing 'tet m' header");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = 3;
  mesh.ambient_dim = m;
  std::string kind;
  while (in >> kind) {
    if (kind == "v") {
      for (int a = 0; a < m; ++a) {
        double x;
        if (!(in >> x)) fail(ErrorCode::parse_error, "truncated tet vertex line");
        mesh.vertices.push_back(x);
      }
    } else if (kind == "c") {
      std::vector<int> cell(4);
      for (int i = 0; i < 4; ++i)
        if (!(in >> cell[i])) fail(ErrorCode::parse_error, "truncated tet cell line");
      mesh.cells.push_back(cell);
    } else if (kind[0] == '#') {
      std::string rest;
      std::getline(in, rest);
    } else {
      fail(ErrorCode::parse_error, "unknown tet record: " + kind);
    }
  }
  const int nv = mesh.vertex_count();
  for (const auto& cell : mesh.cells)
    for (int v : cell)
      if (v < 0 || v >= nv) fail(ErrorCode::parse_error, "tet cell index out of range");
  return mesh;
}

std::string path_extension(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext;
}

}  // namespace

ImmersedMesh load_mesh(const std::string& path, int intrinsic_dim) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open mesh file: " + path);
  const std::string ext = path_extension(path);
  ImmersedMesh mesh;
  if (ext == "obj")
    mesh = load_obj(in, intrinsic_dim);
  else if (ext == "off")
    mesh = load_off(in, intrinsic_dim);
  else if (ext == "tet")
    mesh = load_tet(in);
  else
    fail(ErrorCode::parse_error, "unknown mesh format (expected .obj, .off or .tet): " + path);
  if (mesh.cells.empty()) fail(ErrorCode::parse_error, "mesh has no cells");
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

void save_mesh(const ImmersedMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write mesh file: " + path);
  out.precision(17);
  const std::string ext = path_extension(path);
  if (ext == "obj") {
    if (mesh.ambient_dim != 3 || mesh.intrinsic_dim != 2)
      fail(ErrorCode::unsupported_geometry, "OBJ output is for triangle meshes in R^3");
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      const double* p = mesh.vertex(v);
      out << "v " << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (const auto& c : mesh.cells)
      out << "f " << c[0] + 1 << " " << c[1] + 1 << " " << c[2] + 1 << "\n";
  } else if (ext == "tet") {
    out << "tet " << mesh.ambient_dim << "\n";
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      out << "v";
      for (int a = 0; a < mesh.ambient_dim; ++a) out << " " << mesh.vertex(v)[a];
      out << "\n";
    }
    for (const auto& c : mesh.cells)
      out << "c " << c[0] << " " << c[1] << " " << c[2] << " " << c[3] << "\n";
  } else {
    fail(ErrorCode::unsupported_geometry, "save_mesh writes .obj or .tet");
  }
}

ImmersedMesh make_icosphere(int subdivisions, double radius) {
  if (subdivisions < 0 || subdivisions > 7)
    fail(ErrorCode::invalid_config, "icosphere subdivisions must be in [0, 7]");
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<std::array<double, 3>> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  auto project = [&](std::array<double, 3>& p) {
    const double len = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    for (double& c : p) c *= radius / len;
  };
  for (auto& p : verts) project(p);

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      std::array<double, 3> p = {0.5 * (verts[a][0] + verts[b][0]),
                                 0.5 * (verts[a][1] + verts[b][1]),
                                 0.5 * (verts[a][2] + verts[b][2])};
      project(p);
      verts.push_back(p);
      const int id = (int)verts.size() - 1;
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  ImmersedMesh mesh;
  mesh.intrinsic_dim = 2;
  mesh.ambient_dim = 3;
  for (const auto& p : verts) {
    mesh.vertices.push_back(p[0]);
    mesh.vertices.push_back(p[1]);
    mesh.vertices.push_back(p[2]);
  }
  for (const auto& f : faces) mesh.cells.push_back({f[0], f[1], f[2]});
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

ImmersedMesh make_grid(int cells_x, int cells_y, int ambient_dim) {
  if (cells_x < 1 || cells_y < 1) fail(ErrorCode::invalid_config, "grid needs >= 1 cell per axis");
  if (ambient_dim != 2 && ambient_dim != 3)
    fail(ErrorCode::invalid_config, "grid ambient dimension must be 2 or 3");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = 2;
  mesh.ambient_dim = ambient_dim;
  const int nx = cells_x + 1, ny = cells_y + 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      mesh.vertices.push_back((double)i / cells_x);
      mesh.vertices.push_back((double)j / cells_y);
      if (ambient_dim == 3) mesh.vertices.push_back(0.0);
    }
  auto id = [&](int i, int j) { return j * nx + i; };
  for (int j = 0; j < cells_y; ++j)
    for (int i = 0; i < cells_x; ++i) {
      mesh.cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

ImmersedMesh make_tetgrid(int cells_per_side, double edge) {
  if (cells_per_side < 1) fail(ErrorCode::invalid_config, "tetgrid needs >= 1 cell per axis");
  if (!(edge > 0.0)) fail(ErrorCode::invalid_config, "tetgrid edge must be positive");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = 3;
  mesh.ambient_dim = 3;
  const int n = cells_per_side + 1;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        mesh.vertices.push_back(edge * i / cells_per_side);
        mesh.vertices.push_back(edge * j / cells_per_side);
        mesh.vertices.push_back(edge * k / cells_per_side);
      }
  auto id = [&](int i, int j, int k) { return (k * n + j) * n + i; };
  // five tets per cube (four corner tets around a central near-regular one),
  // with parity-alternating diagonals so neighboring cubes share faces
  const int local[5][4][3] = {
      {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}},  // central
      {{1, 0, 0}, {0, 0, 0}, {1, 1, 0}, {1, 0, 1}},
      {{0, 1, 0}, {0, 0, 0}, {1, 1, 0}, {0, 1, 1}},
      {{0, 0, 1}, {0, 0, 0}, {1, 0, 1}, {0, 1, 1}},
      {{1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
  for (int k = 0; k < cells_per_side; ++k)
    for (int j = 0; j < cells_per_side; ++j)
      for (int i = 0; i < cells_per_side; ++i) {
        const bool flip = ((i + j + k) % 2) != 0;
        for (const auto& tet : local) {
          std::vector<int> cell;
          for (int v = 0; v < 4; ++v) {
            const int dx = flip ? 1 - tet[v][0] : tet[v][0];
            cell.push_back(id(i + dx, j + tet[v][1], k + tet[v][2]));
          }
          mesh.cells.push_back(cell);
        }
      }
  // fix orientations after the fact
  for (auto& cell : mesh.cells) {
    if (signed_cell_volume(mesh, cell) < 0.0) std::swap(cell[2], cell[3]);
  }
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

namespace {

// Shared fan layout for disk-like meshes: ring i of Nr has 6i vertices.
struct FanLayout {
  std::vector<std::vector<int>> ring_ids;
  std::vector<std::vector<double>> ring_params;  // (rho in [0,1], phi)
};

void build_fan(int rings, ImmersedMesh& mesh,
               const std::function<std::array<double, 3>(double, double)>& position) {
  FanLayout lay;
  lay.ring_ids.resize(rings + 1);
  int next = 0;
  for (int i = 0; i <= rings; ++i) {
    const int count = (i == 0) ? 1 : 6 * i;
    for (int j = 0; j < count; ++j) {
      const double rho = (double)i / rings;
      const double phi = (i == 0) ? 0.0 : 2.0 * kPi * j / count;
      const auto p = position(rho, phi);
      mesh.vertices.push_back(p[0]);
      mesh.vertices.push_back(p[1]);
      if (mesh.ambient_dim == 3) mesh.vertices.push_back(p[2]);
      lay.ring_ids[i].push_back(next++);
    }
  }
  // triangulate annulus between ring i and i+1 by walking both rings
  for (int i = 0; i < rings; ++i) {
    const auto& inner = lay.ring_ids[i];
    const auto& outer = lay.ring_ids[i + 1];
    const int ni = (int)inner.size();
    const int no = (int)outer.size();
    if (ni == 1) {  // umbrella around the center vertex
      for (int b = 0; b < no; ++b)
        mesh.cells.push_back({outer[b], outer[(b + 1) % no], inner[0]});
      continue;
    }
    int a = 0, b = 0;  // pointers into inner/outer
    auto inner_angle = [&](int t) { return 2.0 * kPi * t / ni; };
    auto outer_angle = [&](int t) { return 2.0 * kPi * t / no; };
    while (a < ni || b < no) {
      const bool advance_outer =
          (b < no) && (a == ni || outer_angle(b + 1) <= inner_angle(a + 1) + 1e-12);
      if (advance_outer) {
        mesh.cells.push_back({outer[b % no], outer[(b + 1) % no], inner[a % ni]});
        ++b;
      } else {
        mesh.cells.push_back({outer[b % no], inner[(a + 1) % ni], inner[a % ni]});
        ++a;
      }
    }
  }
}

}  // namespace

ImmersedMesh make_disk(int rings, double radius) {
  if (rings < 1) fail(ErrorCode::invalid_config, "disk needs >= 1 ring");
  if (!(radius > 0.0)) fail(ErrorCode::invalid_config, "disk radius must be positive");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = 2;
  mesh.ambient_dim = 2;
  build_fan(rings, mesh, [&](double rho, double phi) {
    return std::array<double, 3>{radius * rho * std::cos(phi), radius * rho * std::sin(phi), 0.0};
  });
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

ImmersedMesh make_hemisphere(int rings, double radius) {
  if (rings < 1) fail(ErrorCode::invalid_config, "hemisphere needs >= 1 ring");
  if (!(radius > 0.0)) fail(ErrorCode::invalid_config, "hemisphere radius must be positive");
  ImmersedMesh mesh;
  mesh.intrinsic_dim = 2;
  mesh.ambient_dim = 3;
  build_fan(rings, mesh, [&](double rho, double phi) {
    const double theta = 0.5 * kPi * rho;
    return std::array<double, 3>{radius * std::sin(theta) * std::cos(phi),
                                 radius * std::sin(theta) * std::sin(phi),
                                 radius * std::cos(theta)};
  });
  validate_mesh(mesh);
  derive_boundary(mesh);
  return mesh;
}

}  // namespace eigenbound::geom
