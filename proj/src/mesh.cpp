#include "mhd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mhd {

namespace {

template <std::size_t N>
std::size_t find_entity(const std::vector<std::array<std::size_t, N>>& table, const std::array<std::size_t, N>& key) {
  auto it = std::lower_bound(table.begin(), table.end(), key);
  return static_cast<std::size_t>(it - table.begin());
}

double signed_volume6(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a));
}

}  // namespace

std::size_t Mesh::num_entities(int dim) const {
  switch (dim) {
    case 0: return num_vertices();
    case 1: return num_edges();
    case 2: return num_faces();
    case 3: return num_cells();
    default: throw std::invalid_argument("entity dimension must be 0..3, got " + std::to_string(dim));
  }
}

bool Mesh::is_boundary(int dim, std::size_t index) const {
  if (dim < 0 || dim > 2) {
    throw std::invalid_argument("boundary flags exist for dimensions 0..2 only");
  }
  return boundary_[static_cast<std::size_t>(dim)].at(index) != 0;
}

Mesh build_structured_mesh(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("build_structured_mesh: n must be positive");
  }
  Mesh m;
  m.n_ = n;
  const std::size_t np = n + 1;
  auto vid = [np](std::size_t i, std::size_t j, std::size_t k) { return i + np * (j + np * k); };

  m.vertices_.resize(np * np * np);
  for (std::size_t k = 0; k < np; ++k) {
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t i = 0; i < np; ++i) {
        m.vertices_[vid(i, j, k)] = {static_cast<double>(i) / n, static_cast<double>(j) / n, static_cast<double>(k) / n};
      }
    }
  }

  // Monotone lattice paths from (0,0,0) to (1,1,1), one per axis permutation.
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  m.cells_.reserve(6 * n * n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& perm : kPerms) {
          std::array<std::size_t, 3> p = {i, j, k};
          std::array<std::size_t, 4> tet{};
          tet[0] = vid(p[0], p[1], p[2]);
          for (int s = 0; s < 3; ++s) {
            ++p[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
            tet[static_cast<std::size_t>(s + 1)] = vid(p[0], p[1], p[2]);
          }
          m.cells_.push_back(tet);  // ascending: each step increases the lexicographic index
        }
      }
    }
  }

  for (const auto& t : m.cells_) {
    for (const auto& e : kTetEdges) {
      m.edges_.push_back({t[static_cast<std::size_t>(e[0])], t[static_cast<std::size_t>(e[1])]});
    }
    for (const auto& f : kTetFaces) {
      m.faces_.push_back({t[static_cast<std::size_t>(f[0])], t[static_cast<std::size_t>(f[1])], t[static_cast<std::size_t>(f[2])]});
    }
  }
  std::sort(m.edges_.begin(), m.edges_.end());
  m.edges_.erase(std::unique(m.edges_.begin(), m.edges_.end()), m.edges_.end());
  std::sort(m.faces_.begin(), m.faces_.end());
  m.faces_.erase(std::unique(m.faces_.begin(), m.faces_.end()), m.faces_.end());

  const std::size_t nt = m.cells_.size();
  m.cell_edges_.resize(nt);
  m.cell_faces_.resize(nt);
  m.orientation_.resize(nt);
  m.volume_.resize(nt);
  m.face_cells_.assign(m.faces_.size(), {Mesh::kNone, Mesh::kNone});
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& c = m.cells_[t];
    for (std::size_t le = 0; le < 6; ++le) {
      const auto& e = kTetEdges[le];
      m.cell_edges_[t][le] = find_entity(m.edges_, {c[static_cast<std::size_t>(e[0])], c[static_cast<std::size_t>(e[1])]});
    }
    for (std::size_t lf = 0; lf < 4; ++lf) {
      const auto& f = kTetFaces[lf];
      const std::size_t gf = find_entity(
          m.faces_, {c[static_cast<std::size_t>(f[0])], c[static_cast<std::size_t>(f[1])], c[static_cast<std::size_t>(f[2])]});
      m.cell_faces_[t][lf] = gf;
      auto& slots = m.face_cells_[gf];
      (slots[0] == Mesh::kNone ? slots[0] : slots[1]) = t;
    }
    const double v6 = signed_volume6(m.vertices_[c[0]], m.vertices_[c[1]], m.vertices_[c[2]], m.vertices_[c[3]]);
    m.orientation_[t] = v6 > 0 ? 1 : -1;
    m.volume_[t] = std::abs(v6) / 6.0;
  }

  m.face_edges_.resize(m.faces_.size());
  for (std::size_t f = 0; f < m.faces_.size(); ++f) {
    const auto& fv = m.faces_[f];
    m.face_edges_[f] = {find_entity(m.edges_, {fv[0], fv[1]}), find_entity(m.edges_, {fv[1], fv[2]}),
                        find_entity(m.edges_, {fv[0], fv[2]})};
  }

  m.boundary_[0].assign(m.vertices_.size(), 0);
  m.boundary_[1].assign(m.edges_.size(), 0);
  m.boundary_[2].assign(m.faces_.size(), 0);
  for (std::size_t f = 0; f < m.faces_.size(); ++f) {
    if (m.face_cells_[f][1] != Mesh::kNone) continue;
    m.boundary_[2][f] = 1;
    for (std::size_t v : m.faces_[f]) m.boundary_[0][v] = 1;
    for (std::size_t e : m.face_edges_[f]) m.boundary_[1][e] = 1;
  }
  return m;
}

std::vector<std::size_t> boundary_entities(const Mesh& mesh, int dim) {
  if (dim < 0 || dim > 2) {
    throw std::invalid_argument("boundary_entities: dim must be 0, 1 or 2");
  }
  std::vector<std::size_t> out;
  const std::size_t count = mesh.num_entities(dim);
  for (std::size_t i = 0; i < count; ++i) {
    if (mesh.is_boundary(dim, i)) out.push_back(i);
  }
  return out;
}

TetAdjacency entity_adjacency(const Mesh& mesh, std::size_t tet) {
  if (tet >= mesh.num_cells()) {
    throw std::invalid_argument("entity_adjacency: tet index " + std::to_string(tet) + " out of range");
  }
  TetAdjacency adj;
  adj.vertices = mesh.cell(tet);
  adj.edges = mesh.cell_edges(tet);
  adj.edge_signs.fill(1);
  adj.faces = mesh.cell_faces(tet);
  adj.orientation = mesh.cell_orientation(tet);
  for (std::size_t lf = 0; lf < 4; ++lf) {
    // boundary of [v0 v1 v2 v3] = sum_k (-1)^k [.. without v_k ..]
    adj.face_signs[lf] = adj.orientation * ((lf % 2 == 0) ? 1 : -1);
  }
  return adj;
}

void write_mesh_vtk(const Mesh& mesh, std::ostream& out) {
  out << "# vtk DataFile Version 3.0\n";
  out << "tetrahedral mesh n=" << mesh.subdivisions() << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  out.precision(17);
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    const auto& x = mesh.vertex(i);
    out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  }
  out << "CELLS " << mesh.num_cells() << ' ' << 5 * mesh.num_cells() << '\n';
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    auto c = mesh.cell(t);
    // VTK wants positively oriented tetrahedra.
    if (mesh.cell_orientation(t) < 0) std::swap(c[2], c[3]);
    out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) out << "10\n";
}

}  // namespace mhd
