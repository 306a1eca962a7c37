#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhd/assembly.hpp"
#include "mhd/de_rham.hpp"
#include "mhd/krylov.hpp"

namespace mhd {

enum class Scheme { Main, Reference };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct SimParams {
  std::size_t n = 8;
  double dt = 1e-3;
  double t_end = 0.2;
  double re_inv = 0.0;
  double rm_inv = 0.0;
  double coupling = 1.0;
  double picard_tol = 1e-10;
  int picard_max = 50;
  double krylov_tol = 1e-12;
  int krylov_max = 5000;
  /// SSOR sweeps of the pressure block preconditioner.
  int pressure_sweeps = 2;
  Scheme scheme = Scheme::Main;

  /// Throws std::invalid_argument when dt <= 0 or a physical parameter is negative.
  void validate() const;
};

using TimeVectorField = std::function<Vec3(const Vec3&, double)>;

/// Optional forcing. momentum: f in the velocity equation. induction: G added to the magnetic
/// equation through its Div-space projection. constraint_velocity: w with (u, grad Q) = (w, grad Q).
struct Sources {
  TimeVectorField momentum;
  TimeVectorField induction;
  TimeVectorField constraint_velocity;

  bool any() const { return momentum || induction || constraint_velocity; }
};

/// Fields at a time node plus the midpoint auxiliaries of the step that produced it.
/// For the main scheme B lives in Div; for the reference scheme in Curl.
struct MhdState {
  FieldVector u;
  FieldVector B;
  FieldVector omega, j, E, H;
  FieldVector P;
  double t = 0.0;
  int step = 0;
};

struct PicardReport {
  int iterations = 0;
  int inner_iterations = 0;
  bool converged = false;
  /// (||du|| + ||dB||) / dt per sweep.
  std::vector<double> differences;
};

struct SaddleSolution {
  std::vector<double> u;
  std::vector<double> p;
  SolverReport report;
};

/// Crank-Nicolson integrator for one mesh and one parameter set.
class Integrator {
 public:
  Integrator(const DeRhamComplex& cx, SimParams params, Sources sources = {});

  const DeRhamComplex& complex() const { return cx_; }
  const SimParams& params() const { return params_; }
  const Sources& sources() const { return sources_; }

  /// u^0, B^0 as given; auxiliaries computed from them; P = 0.
  MhdState initial_state(FieldVector u0, FieldVector b0) const;

  /// Solves (u/dt, v) + (re_inv/2)(curl u, curl v) + (grad P, v) = (F, v), (u, grad Q) = c_Q
  /// where F and the constraint vector are full-length load vectors.
  SaddleSolution solve_velocity_pressure(std::span<const double> F, std::span<const double> constraint,
                                         const std::vector<double>* u_guess = nullptr,
                                         const std::vector<double>* p_guess = nullptr) const;

  /// B^{n+1} = B^n - dt C E (+ dt Q_div G).
  std::vector<double> advance_magnetic(std::span<const double> b_n, std::span<const double> e_mid,
                                       const std::vector<double>* induction = nullptr) const;

  /// One step of the configured scheme. Throws StepFailure when Picard does not converge.
  MhdState step(const MhdState& s, PicardReport* report = nullptr) const;
  MhdState step_main(const MhdState& s, PicardReport* report = nullptr) const;
  MhdState step_reference(const MhdState& s, PicardReport* report = nullptr) const;

  /// Midpoint auxiliaries of the main scheme for given node values.
  void main_auxiliaries(const std::vector<double>& u_mid, const std::vector<double>& b_mid, MhdState& out) const;

  const SparseMatrix& saddle_matrix() const { return saddle_; }
  const Preconditioner& saddle_preconditioner() const { return saddle_prec_; }

 private:
  std::vector<double> momentum_load(double t) const;
  std::vector<double> constraint_load(double t, std::span<const double> u_n) const;

  const DeRhamComplex& cx_;
  SimParams params_;
  Sources sources_;
  SparseMatrix velocity_block_;
  SparseMatrix saddle_;
  Preconditioner saddle_prec_;
  // Reference scheme: M1/dt + (rm_inv/2) K on free edges.
  SparseMatrix magnetic_block_;
  Preconditioner magnetic_prec_;
};

}  // namespace mhd
