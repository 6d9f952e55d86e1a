#pragma once

#include "mgvi/core.hpp"
#include "mgvi/saddle.hpp"
#include "mgvi/solvers.hpp"

namespace mgvi {

struct AdmmParams {
  double rho = 1.0;  ///< penalty ρ
  /// AD-LPMM linearization constants; must satisfy alpha_lin ≥ ρλ_max(AᵀA)
  /// and beta_lin ≥ ρλ_max(BᵀB). Auto-set to 1.01·ρ·(spectral bound) when
  /// absent.
  std::optional<double> alpha_lin;
  std::optional<double> beta_lin;
  int max_iter = 200000;
  double tol_succ = 1e-6;  ///< successive-iterate ∞-norm tolerance on (x, λ)
};

void validate(const AdmmParams& params);

/// Proximal gradient for the lasso ½‖Ax-b‖² + λ‖x‖₁:
///   x⁺ = Prox_{s·λ‖·‖₁}(x - s·Aᵀ(Ax - b)).
/// `step` defaults to 0.99/λ_max(AᵀA) (power-iteration estimate) and is
/// rejected when it exceeds 1/λ_max(AᵀA).
SolveResult solveIsta(const DenseMatrix& A, const Vector& b, double lambda_reg,
                      std::optional<double> step, const Vector& x0,
                      double tol_inf, int max_iter,
                      const SolveHooks& hooks = {});

/// Exact minimizer of one ADMM subproblem: argmin θ(w) + (ρ/2)‖Kw - t‖²
/// for that block's constraint matrix K.
using AdmmSubSolver = std::function<Vector(const Vector& target, double rho)>;

/// Sub-solver for a block whose constraint matrix is sign·I: the subproblem
/// collapses to a prox evaluation.
AdmmSubSolver admmIdentityBlockSolver(ProxFunction theta, double sign = 1.0);

/// Classic ADMM for min θ₁(x) + θ₂(y) s.t. Ax + By = c. The caller supplies
/// exact sub-minimizers; without closed forms this solver is unavailable.
/// x_final holds (x, y, λ) concatenated.
SolveResult solveAdmm(const SaddleProblem& sp, AdmmSubSolver solve_x,
                      AdmmSubSolver solve_y, const AdmmParams& params,
                      const SaddlePoint& z0, const SolveHooks& hooks = {});

/// Linearized-proximal ADMM: both subproblems become prox evaluations.
/// Stops when ‖(x⁺,λ⁺) - (x,λ)‖_∞ < tol_succ. x_final holds (x, y, λ).
SolveResult solveAdlpmm(const SaddleProblem& sp, const AdmmParams& params,
                        const SaddlePoint& z0, const SolveHooks& hooks = {});

}  // namespace mgvi
