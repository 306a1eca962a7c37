#pragma once

#include <string>
#include <vector>

#include "mhd/timestepper.hpp"

namespace mhd::mms {

/// h(s) = s^2 (1 - s)^2 and its derivatives up to order 4.
double h(int order, double s);
/// h^(a)(x) h^(b)(y) h^(c)(z).
double D(int a, int b, int c, const Vec3& x);

struct Coefficients {
  double re_inv = 1e-4;
  double rm_inv = 1e-4;
  double coupling = 1.0;
};

Vec3 velocity(const Vec3& x, double t);
/// Equal to the vorticity curl u.
Vec3 magnetic(const Vec3& x, double t);
/// curl B.
Vec3 current(const Vec3& x, double t);
Vec3 velocity_dt(const Vec3& x, double t);
Vec3 magnetic_dt(const Vec3& x, double t);
Vec3 current_curl(const Vec3& x, double t);
double divergence_velocity(const Vec3& x, double t);
/// Total pressure P = p + |u|^2 / 2 with p = D(0,0,0).
double total_pressure(const Vec3& x, double t);
Vec3 total_pressure_gradient(const Vec3& x, double t);

Vec3 momentum_source(const Coefficients& k, const Vec3& x, double t);
Vec3 induction_source(const Coefficients& k, const Vec3& x, double t);

/// Sources for the integrator: f, G and the constraint field w = u.
Sources sources(const Coefficients& k);

struct SourceCheck {
  double momentum_error = 0.0;
  double induction_error = 0.0;
  bool passed = false;
};

/// Compares the closed-form sources with sixth-order central differences of u, B and P at
/// deterministic sample points. Errors are relative to the largest source value.
SourceCheck validate_sources(const Coefficients& k, int samples = 200, double dx = 1e-3, double dtime = 1e-4,
                             double tol = 1e-6);
/// Same check with the closed-form sources evaluated with perturbed coefficients.
SourceCheck validate_sources_against(const Coefficients& used, const Coefficients& truth, int samples = 200,
                                     double dx = 1e-3, double dtime = 1e-4, double tol = 1e-6);

struct ConvergenceRow {
  double h = 0.0;
  double err_b = 0.0;
  double order_b = 0.0;
  double err_u = 0.0;
  double order_u = 0.0;
  double err_p = 0.0;
  double order_p = 0.0;
  int steps = 0;
};

/// Runs the main scheme from the projected exact data to t_end on each mesh and returns the
/// errors in B and u at t_end and in P at t_end - dt/2. Orders of the first row are 0.
std::vector<ConvergenceRow> run_convergence(const std::vector<std::size_t>& meshes, double dt, double t_end,
                                            const Coefficients& k, SimParams base = {});

}  // namespace mhd::mms
