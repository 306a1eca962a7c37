#include "mhd/whitney.hpp"

#include <cmath>

namespace mhd {

Vec3 CellGeometry::point(const Barycentric& l) const {
  return l[0] * x[0] + l[1] * x[1] + l[2] * x[2] + l[3] * x[3];
}

CellGeometry cell_geometry(const Mesh& mesh, std::size_t t) {
  CellGeometry g;
  const auto& c = mesh.cell(t);
  for (int i = 0; i < 4; ++i) g.x[i] = mesh.vertex(c[i]);
  const Vec3 e1 = g.x[1] - g.x[0], e2 = g.x[2] - g.x[0], e3 = g.x[3] - g.x[0];
  const double det = dot(e1, cross(e2, e3));
  g.grad_lambda[1] = (1.0 / det) * cross(e2, e3);
  g.grad_lambda[2] = (1.0 / det) * cross(e3, e1);
  g.grad_lambda[3] = (1.0 / det) * cross(e1, e2);
  g.grad_lambda[0] = -(g.grad_lambda[1] + g.grad_lambda[2] + g.grad_lambda[3]);
  g.volume = std::abs(det) / 6.0;
  return g;
}

std::vector<CellGeometry> all_cell_geometry(const Mesh& mesh) {
  std::vector<CellGeometry> out(mesh.num_cells());
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) out[t] = cell_geometry(mesh, t);
  return out;
}

}  // namespace mhd
