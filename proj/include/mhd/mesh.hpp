#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mhd/vec3.hpp"

namespace mhd {

/// Local edge (i, j) of a tetrahedron, i < j in local vertex numbering.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
/// Local face k is the face opposite local vertex k.
inline constexpr std::array<std::array<int, 3>, 4> kTetFaces = {{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

/// Signed local-to-global entity maps of one tetrahedron.
///
/// Edge signs are relative to the ascending-vertex global orientation (always +1 because
/// cell vertex tuples are stored ascending). Face signs are the boundary incidence numbers
/// of the cell: +1 when the face's global normal points out of the cell.
struct TetAdjacency {
  std::array<std::size_t, 4> vertices{};
  std::array<std::size_t, 6> edges{};
  std::array<int, 6> edge_signs{};
  std::array<std::size_t, 4> faces{};
  std::array<int, 4> face_signs{};
  int orientation = 1;
};

/// Structured Kuhn tetrahedral mesh of the unit cube with explicit entity tables.
///
/// All entities are stored as ascending vertex tuples; that ordering defines the global
/// orientation of edges (tail -> head) and faces (normal (x_b - x_a) x (x_c - x_a)).
class Mesh {
 public:
  std::size_t subdivisions() const { return n_; }
  double h() const { return 1.0 / static_cast<double>(n_); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_entities(int dim) const;

  const Vec3& vertex(std::size_t i) const { return vertices_[i]; }
  const std::array<std::size_t, 2>& edge(std::size_t i) const { return edges_[i]; }
  const std::array<std::size_t, 3>& face(std::size_t i) const { return faces_[i]; }
  const std::array<std::size_t, 4>& cell(std::size_t i) const { return cells_[i]; }

  const std::array<std::size_t, 6>& cell_edges(std::size_t t) const { return cell_edges_[t]; }
  const std::array<std::size_t, 4>& cell_faces(std::size_t t) const { return cell_faces_[t]; }
  /// Edges (a,b), (b,c), (a,c) of face (a,b,c); boundary signs are +1, +1, -1.
  const std::array<std::size_t, 3>& face_edges(std::size_t f) const { return face_edges_[f]; }
  /// Cells incident to a face; the second slot is kNone on the boundary.
  const std::array<std::size_t, 2>& face_cells(std::size_t f) const { return face_cells_[f]; }

  int cell_orientation(std::size_t t) const { return orientation_[t]; }
  double cell_volume(std::size_t t) const { return volume_[t]; }

  bool is_boundary(int dim, std::size_t index) const;

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::array<int, 3> kFaceEdgeSigns = {1, 1, -1};

 private:
  friend Mesh build_structured_mesh(std::size_t n);

  std::size_t n_ = 0;
  std::vector<Vec3> vertices_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::array<std::size_t, 3>> faces_;
  std::vector<std::array<std::size_t, 4>> cells_;
  std::vector<std::array<std::size_t, 6>> cell_edges_;
  std::vector<std::array<std::size_t, 4>> cell_faces_;
  std::vector<std::array<std::size_t, 3>> face_edges_;
  std::vector<std::array<std::size_t, 2>> face_cells_;
  std::vector<int> orientation_;
  std::vector<double> volume_;
  std::array<std::vector<char>, 3> boundary_;
};

/// Splits each of the n^3 subcubes into the 6 Kuhn tetrahedra around its (0,0,0)-(1,1,1)
/// diagonal. Throws std::invalid_argument for n == 0.
Mesh build_structured_mesh(std::size_t n);

/// Indices of entities of dimension dim (0, 1 or 2) whose closure lies on the boundary.
std::vector<std::size_t> boundary_entities(const Mesh& mesh, int dim);

TetAdjacency entity_adjacency(const Mesh& mesh, std::size_t tet);

/// Legacy ASCII VTK unstructured grid (cell type 10).
void write_mesh_vtk(const Mesh& mesh, std::ostream& out);

}  // namespace mhd
