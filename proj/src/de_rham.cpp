#include "mhd/de_rham.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mhd/assembly.hpp"
#include "mhd/errors.hpp"

namespace mhd {

SparseMatrix exterior_derivative_matrix(const Mesh& mesh, SpaceKind from) {
  std::vector<Triplet> t;
  switch (from) {
    case SpaceKind::Grad:
      for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        t.push_back({e, mesh.edge(e)[0], -1.0});
        t.push_back({e, mesh.edge(e)[1], 1.0});
      }
      return SparseMatrix::from_triplets(mesh.num_edges(), mesh.num_vertices(), std::move(t));
    case SpaceKind::Curl:
      for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto& fe = mesh.face_edges(f);
        for (int k = 0; k < 3; ++k) t.push_back({f, fe[k], static_cast<double>(Mesh::kFaceEdgeSigns[k])});
      }
      return SparseMatrix::from_triplets(mesh.num_faces(), mesh.num_edges(), std::move(t));
    case SpaceKind::Div:
      for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const auto adj = entity_adjacency(mesh, c);
        for (int k = 0; k < 4; ++k) t.push_back({c, adj.faces[k], static_cast<double>(adj.face_signs[k])});
      }
      return SparseMatrix::from_triplets(mesh.num_cells(), mesh.num_faces(), std::move(t));
    case SpaceKind::L2:
      break;
  }
  throw std::invalid_argument("exterior_derivative_matrix: L2 is the end of the complex");
}

DeRhamComplex::DeRhamComplex(std::size_t n) : mesh_(build_structured_mesh(n)) { build(); }

DeRhamComplex::DeRhamComplex(Mesh mesh) : mesh_(std::move(mesh)) { build(); }

void DeRhamComplex::build() {
  for (int k = 0; k < 4; ++k) spaces_[k] = FeSpace(mesh_, static_cast<SpaceKind>(k));
  geometry_ = all_cell_geometry(mesh_);
  g_ = exterior_derivative_matrix(mesh_, SpaceKind::Grad);
  c_ = exterior_derivative_matrix(mesh_, SpaceKind::Curl);
  d_ = exterior_derivative_matrix(mesh_, SpaceKind::Div);
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<SpaceKind>(k);
    mass_[k] = mass_matrix(mesh_, geometry_, kind);
    const auto& fr = spaces_[k].free_dofs();
    mass_free_[k] = mass_[k].submatrix(fr, fr);
    mass_prec_[k] = mass_free_[k].rows() > 0 ? jacobi_preconditioner(mass_free_[k]) : identity_preconditioner();
  }
  mixed_ = mixed_mass_matrix(mesh_, geometry_);
  curl_curl_ = multiply(c_.transpose(), multiply(mass_[2], c_));
  const auto& fe = spaces_[1].free_dofs();
  curl_curl_free_ = curl_curl_.submatrix(fe, fe);
  const auto& fv = spaces_[0].free_dofs();
  laplacian_free_ = multiply(g_.transpose(), multiply(mass_[1], g_)).submatrix(fv, fv);
}

std::vector<double> DeRhamComplex::solve_mass(SpaceKind k, std::span<const double> rhs,
                                              const std::vector<double>* guess, SolverReport* report) const {
  const int i = static_cast<int>(k);
  const auto& sp = spaces_[i];
  if (rhs.size() != sp.num_dofs()) throw std::invalid_argument("solve_mass: wrong right-hand side length");
  if (k == SpaceKind::L2) {
    std::vector<double> out(rhs.size());
    for (std::size_t c = 0; c < rhs.size(); ++c) out[c] = rhs[c] / geometry_[c].volume;
    if (report) *report = SolverReport{0, 0.0, true, false, {}};
    return out;
  }
  std::vector<double> b(sp.num_free());
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = rhs[sp.free_dofs()[j]];
  std::vector<double> x = guess ? sp.restrict_to_free(*guess) : std::vector<double>(b.size(), 0.0);
  const auto rep = cg(mass_free_[i], b, x, KrylovOptions{mass_tol, 10000, 200}, mass_prec_[i]);
  if (report) *report = rep;
  if (!rep.converged) {
    throw SolverFailure("mass solve in " + to_string(k) + " space did not converge (residual " +
                        std::to_string(rep.relative_residual) + ")");
  }
  return sp.extend_from_free(x);
}

double DeRhamComplex::inner(SpaceKind k, std::span<const double> a, std::span<const double> b) const {
  const auto mb = mass_[static_cast<int>(k)] * b;
  return vec::dot(a, mb);
}

double DeRhamComplex::norm(SpaceKind k, std::span<const double> a) const {
  return std::sqrt(std::max(0.0, inner(k, a, a)));
}

}  // namespace mhd
