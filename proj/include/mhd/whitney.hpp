#pragma once

#include <array>
#include <vector>

#include "mhd/mesh.hpp"
#include "mhd/vec3.hpp"

namespace mhd {

using Barycentric = std::array<double, 4>;

/// Affine data of one tetrahedron in ascending local vertex order.
struct CellGeometry {
  std::array<Vec3, 4> x;
  std::array<Vec3, 4> grad_lambda;
  double volume = 0.0;

  Vec3 point(const Barycentric& l) const;
};

CellGeometry cell_geometry(const Mesh& mesh, std::size_t t);
std::vector<CellGeometry> all_cell_geometry(const Mesh& mesh);

/// Whitney forms on one cell. Local edge k joins kTetEdges[k] (tail to head); local face k is
/// opposite vertex k with its vertices in ascending order.
namespace whitney {

inline double vertex(const Barycentric& l, int k) { return l[k]; }

inline Vec3 edge(const CellGeometry& g, const Barycentric& l, int k) {
  const int i = kTetEdges[k][0], j = kTetEdges[k][1];
  return l[i] * g.grad_lambda[j] - l[j] * g.grad_lambda[i];
}

inline Vec3 edge_curl(const CellGeometry& g, int k) {
  const int i = kTetEdges[k][0], j = kTetEdges[k][1];
  return 2.0 * cross(g.grad_lambda[i], g.grad_lambda[j]);
}

inline Vec3 face(const CellGeometry& g, const Barycentric& l, int k) {
  const int a = kTetFaces[k][0], b = kTetFaces[k][1], c = kTetFaces[k][2];
  const auto& ga = g.grad_lambda[a];
  const auto& gb = g.grad_lambda[b];
  const auto& gc = g.grad_lambda[c];
  return 2.0 * (l[a] * cross(gb, gc) - l[b] * cross(ga, gc) + l[c] * cross(ga, gb));
}

inline double face_div(const CellGeometry& g, int k) {
  const int a = kTetFaces[k][0], b = kTetFaces[k][1], c = kTetFaces[k][2];
  return 6.0 * dot(g.grad_lambda[a], cross(g.grad_lambda[b], g.grad_lambda[c]));
}

}  // namespace whitney

}  // namespace mhd
