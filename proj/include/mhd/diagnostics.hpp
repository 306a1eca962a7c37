#pragma once

#include <vector>

#include "mhd/de_rham.hpp"
#include "mhd/krylov.hpp"
#include "mhd/timestepper.hpp"

namespace mhd {

struct DiagnosticsRecord {
  int step = 0;
  double time = 0.0;
  double energy = 0.0;
  double hm = 0.0;
  double hc = 0.0;
  double div_b_l2 = 0.0;
  double div_b_max = 0.0;
  double res_energy = 0.0;
  double res_hm = 0.0;
  double res_hc = 0.0;
  int picard_iters = 0;
  int inner_iters = 0;
};

/// Cell divergences D B scaled by 1/|K|: sqrt(sum (DB)^2 / |K|) and max |DB| / |K|.
struct DivNorms {
  double l2 = 0.0;
  double max = 0.0;
};
DivNorms div_norms(const DeRhamComplex& cx, const FieldVector& b);
/// max |D B| without volume scaling.
double div_max_raw(const DeRhamComplex& cx, const FieldVector& b);
/// max over free vertices of |(B, grad z_i)| for a Curl field (weak Gauss law).
double weak_div_max(const DeRhamComplex& cx, const FieldVector& b);

struct PotentialOptions {
  double tol = 1e-12;
  int max_iterations = 5000;
  /// Relative threshold on max|D B| above which the helicity is undefined.
  double div_threshold = 1e-9;
};

/// A in H0(curl) with (curl A, curl C) = (B, curl C), by SSOR-preconditioned GMRES from zero.
/// Throws PreconditionViolation if B is not divergence free and SolverFailure if GMRES fails.
FieldVector magnetic_potential(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt = {},
                               SolverReport* report = nullptr);
/// Integral of A . B with A from magnetic_potential.
double magnetic_helicity(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt = {},
                         FieldVector* potential = nullptr);
/// Magnetic helicity of a Div field, or of the divergence-free projection of a Curl field.
double state_magnetic_helicity(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt = {});
/// Integral of A . B for a given potential.
double helicity_with_potential(const DeRhamComplex& cx, const FieldVector& b, const FieldVector& a);
/// Integral of u . B; B may be a Div or a Curl field.
double cross_helicity(const DeRhamComplex& cx, const FieldVector& u, const FieldVector& b);

/// Closest Div field to b (Curl or Div) in L2 among fields with D P = 0.
FieldVector divfree_project(const DeRhamComplex& cx, const FieldVector& b, double tol = 1e-13,
                            SolverReport* report = nullptr);

struct HelicityBound {
  double hm = 0.0;
  double b_norm2 = 0.0;
  double ratio = 0.0;
};
HelicityBound helicity_energy_bound(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt = {});

/// 0.5 ||u||^2 + 0.5 c ||B||^2.
double energy(const DeRhamComplex& cx, const MhdState& s, double coupling);
/// ||u||^2 + ||B||^2.
double field_scale(const DeRhamComplex& cx, const MhdState& s);

/// |(D_t u, u) + c (D_t B, B) + Re^-1 ||curl u||^2 + c Rm^-1 ||j||^2 - (f, u)| at the midpoint of
/// the step s0 -> s1.
double energy_identity_residual(const Integrator& integ, const MhdState& s0, const MhdState& s1);

struct HelicityResiduals {
  double r_m = 0.0;
  double r_c = 0.0;
  /// Right-hand sides of the balance laws.
  double rhs_m = 0.0;
  double rhs_c = 0.0;
  /// Cross-helicity right-hand side with (omega, j) in place of (curl u, j).
  double rhs_c_omega = 0.0;
};

/// r_m = |D_t H_m + 2 Rm^-1 (H, j)|, r_c = |D_t H_c + Re^-1 (curl u, curl H) + Rm^-1 (curl u, j) - (f, H)|
/// for given helicities at both nodes. For the reference scheme H := B and j := curl B at the midpoint.
HelicityResiduals helicity_identity_residuals(const Integrator& integ, const MhdState& s0, const MhdState& s1,
                                              double hm0, double hm1);

/// Collects one time-series record. hm is the magnetic helicity of s (already computed).
DiagnosticsRecord make_record(const Integrator& integ, const MhdState& s, double hm);

}  // namespace mhd
