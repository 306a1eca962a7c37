#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mhd/fe_space.hpp"
#include "mhd/krylov.hpp"
#include "mhd/mesh.hpp"
#include "mhd/sparse.hpp"
#include "mhd/whitney.hpp"

namespace mhd {

/// Signed incidence matrix: G (edges x vertices), C (faces x edges) or D (cells x faces).
SparseMatrix exterior_derivative_matrix(const Mesh& mesh, SpaceKind from);

/// The discrete complex H0(grad) -> H0(curl) -> H0(div) -> L2 on one mesh, with its
/// incidence and mass matrices. All field vectors are full length; boundary entries stay 0.
class DeRhamComplex {
 public:
  explicit DeRhamComplex(std::size_t n);
  explicit DeRhamComplex(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  const FeSpace& space(SpaceKind k) const { return spaces_[static_cast<int>(k)]; }
  const std::vector<CellGeometry>& geometry() const { return geometry_; }

  const SparseMatrix& grad() const { return g_; }
  const SparseMatrix& curl() const { return c_; }
  const SparseMatrix& div() const { return d_; }

  const SparseMatrix& mass(SpaceKind k) const { return mass_[static_cast<int>(k)]; }
  /// X(e, f) = integral of W_e . W_f for edge basis W_e and face basis W_f.
  const SparseMatrix& mixed_mass() const { return mixed_; }
  /// K = C^T M2 C.
  const SparseMatrix& curl_curl() const { return curl_curl_; }

  /// Restrictions to free DOFs.
  const SparseMatrix& mass_free(SpaceKind k) const { return mass_free_[static_cast<int>(k)]; }
  const SparseMatrix& curl_curl_free() const { return curl_curl_free_; }
  /// G^T M1 G on free vertex DOFs.
  const SparseMatrix& grad_laplacian_free() const { return laplacian_free_; }

  /// Solves M x = rhs on the free DOFs (CG, relative tolerance mass_tol) and returns the full
  /// vector. An optional full-length initial guess is used as warm start.
  std::vector<double> solve_mass(SpaceKind k, std::span<const double> rhs, const std::vector<double>* guess = nullptr,
                                 SolverReport* report = nullptr) const;

  double inner(SpaceKind k, std::span<const double> a, std::span<const double> b) const;
  double norm(SpaceKind k, std::span<const double> a) const;

  double mass_tol = 1e-13;

 private:
  void build();

  Mesh mesh_;
  std::array<FeSpace, 4> spaces_;
  std::vector<CellGeometry> geometry_;
  SparseMatrix g_, c_, d_;
  std::array<SparseMatrix, 4> mass_;
  std::array<SparseMatrix, 4> mass_free_;
  std::array<Preconditioner, 4> mass_prec_;
  SparseMatrix mixed_, curl_curl_, curl_curl_free_, laplacian_free_;
};

}  // namespace mhd
