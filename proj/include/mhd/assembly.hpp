#pragma once

#include <functional>
#include <vector>

#include "mhd/de_rham.hpp"
#include "mhd/fe_space.hpp"
#include "mhd/sparse.hpp"
#include "mhd/vec3.hpp"
#include "mhd/whitney.hpp"

namespace mhd {

using ScalarField = std::function<double(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Default quadrature degrees per term.
inline constexpr int kMassDegree = 2;
inline constexpr int kTrilinearDegree = 4;
inline constexpr int kSourceDegree = 5;
inline constexpr int kTraceDegree = 8;
inline constexpr int kEdgeTraceDegree = 11;

SparseMatrix mass_matrix(const Mesh& mesh, const std::vector<CellGeometry>& geometry, SpaceKind kind,
                         int degree = kMassDegree);
/// Edge-by-face matrix of integrals W_e . W_f.
SparseMatrix mixed_mass_matrix(const Mesh& mesh, const std::vector<CellGeometry>& geometry, int degree = kMassDegree);

/// Value of a Curl or Div field at barycentric point l of cell t.
Vec3 evaluate_vector(const DeRhamComplex& cx, const FieldVector& f, std::size_t t, const Barycentric& l);
/// Value of a Grad or L2 field.
double evaluate_scalar(const DeRhamComplex& cx, const FieldVector& f, std::size_t t, const Barycentric& l);
/// Gradient of a Grad field on cell t (constant).
Vec3 evaluate_gradient(const DeRhamComplex& cx, const FieldVector& f, std::size_t t);

/// r_k = integral of f . psi_k for the Curl or Div basis.
std::vector<double> load_vector(const DeRhamComplex& cx, SpaceKind kind, const VectorField& f,
                                int degree = kSourceDegree);
/// r_k = integral of f phi_k for the Grad or L2 basis.
std::vector<double> load_vector(const DeRhamComplex& cx, SpaceKind kind, const ScalarField& f,
                                int degree = kSourceDegree);

/// r_k = integral of (a x b) . psi_k over Curl test functions; a, b are Curl or Div fields.
std::vector<double> cross_form_vector(const DeRhamComplex& cx, const FieldVector& a, const FieldVector& b,
                                      int degree = kTrilinearDegree);
/// r_k = integral of (a x b) . curl psi_k over Curl test functions.
std::vector<double> mixed_cross_form_vector(const DeRhamComplex& cx, const FieldVector& a, const FieldVector& b,
                                            int degree = kTrilinearDegree);

/// Canonical DOFs: vertex values, edge moments, face fluxes, cell averages. Boundary DOFs are
/// set to exactly 0 when pin_boundary is true. degree < 0 selects kEdgeTraceDegree for edges
/// and kTraceDegree otherwise.
FieldVector interpolate(const DeRhamComplex& cx, SpaceKind kind, const VectorField& f, bool pin_boundary = true,
                        int degree = -1);
FieldVector interpolate(const DeRhamComplex& cx, SpaceKind kind, const ScalarField& f, bool pin_boundary = true,
                        int degree = -1);

FieldVector l2_project(const DeRhamComplex& cx, SpaceKind target, const VectorField& f, int degree = kSourceDegree);
FieldVector l2_project(const DeRhamComplex& cx, SpaceKind target, const ScalarField& f, int degree = kSourceDegree);
/// Projection of a discrete field; supported pairs: same space, Div -> Curl, Curl -> Div.
FieldVector l2_project(const DeRhamComplex& cx, const FieldVector& source, SpaceKind target,
                       const std::vector<double>* guess = nullptr);

/// j with (j, V) = (B, curl V) for all free V.
FieldVector discrete_curl(const DeRhamComplex& cx, const FieldVector& b, const std::vector<double>* guess = nullptr);
/// d with (d, phi) = -(v, grad phi) for all free phi.
FieldVector discrete_div(const DeRhamComplex& cx, const FieldVector& v);
/// v - grad phi with (v - grad phi, grad q) = 0 for all free q.
FieldVector solenoidal_part(const DeRhamComplex& cx, const FieldVector& v);

/// ||f - f_h||_0 by quadrature.
double l2_error(const DeRhamComplex& cx, const FieldVector& fh, const VectorField& f, int degree = kSourceDegree);
double l2_error(const DeRhamComplex& cx, const FieldVector& fh, const ScalarField& f, int degree = kSourceDegree);
/// Full H1 norm of p - p_h for a Grad field, given p and its gradient.
double h1_error(const DeRhamComplex& cx, const FieldVector& ph, const ScalarField& p, const VectorField& grad_p,
                int degree = kSourceDegree);

}  // namespace mhd
