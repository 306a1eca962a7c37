#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mhd/sparse.hpp"

namespace mhd {

/// y = Op(x); y is fully overwritten.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

LinearOperator as_operator(const SparseMatrix& a);

struct SolverReport {
  int iterations = 0;
  /// CG and GMRES: ||b - Ax|| / ||b||. MINRES: the same ratio in the preconditioner norm.
  double relative_residual = 0.0;
  bool converged = false;
  bool breakdown = false;
  /// Relative residual after each iteration, starting with the initial guess.
  std::vector<double> history;
};

struct Preconditioner {
  std::string kind = "identity";
  LinearOperator apply;
};

Preconditioner identity_preconditioner();
/// Throws std::invalid_argument on a zero diagonal entry.
Preconditioner jacobi_preconditioner(const SparseMatrix& a);
/// Symmetric Gauss-Seidel / SSOR sweeps from a zero initial guess. Symmetric for any sweep count.
Preconditioner ssor_preconditioner(const SparseMatrix& a, double omega = 1.0, int sweeps = 1);
/// Block diagonal preconditioner for [[A, B^T], [B, 0]]: diagonal of A on the first block and
/// `pressure_scale` times SSOR sweeps on `pressure_operator` on the second.
Preconditioner block_diagonal_preconditioner(const SparseMatrix& velocity_block, const SparseMatrix& pressure_operator,
                                             double pressure_scale, int sweeps = 2);
/// kind in {identity, jacobi, ssor}.
Preconditioner make_preconditioner(const std::string& kind, const SparseMatrix& a);

struct KrylovOptions {
  double tol = 1e-10;
  int max_iterations = 1000;
  int restart = 200;
};

/// x holds the initial guess on entry and the iterate on exit.
SolverReport cg(const LinearOperator& a, std::span<const double> b, std::vector<double>& x, const KrylovOptions& opt,
                const Preconditioner& m = identity_preconditioner());
SolverReport cg(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x, const KrylovOptions& opt,
                const Preconditioner& m = identity_preconditioner());

SolverReport minres(const LinearOperator& a, std::span<const double> b, std::vector<double>& x,
                    const KrylovOptions& opt, const Preconditioner& m = identity_preconditioner());
SolverReport minres(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x,
                    const KrylovOptions& opt, const Preconditioner& m = identity_preconditioner());

/// Right-preconditioned restarted GMRES.
SolverReport gmres(const LinearOperator& a, std::span<const double> b, std::vector<double>& x,
                   const KrylovOptions& opt, const Preconditioner& m = identity_preconditioner());
SolverReport gmres(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x,
                   const KrylovOptions& opt, const Preconditioner& m = identity_preconditioner());

}  // namespace mhd
