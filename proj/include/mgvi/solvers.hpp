#pragma once

#include "mgvi/core.hpp"

namespace mgvi {

/// Shared knobs for the predictor-corrector solvers. Defaults: ν close to 1
/// maximizes accepted steps, γ close to 2 maximizes the contraction
/// coefficient γ(2-γ)α*.
struct SolverParams {
  double nu = 0.9;     ///< line-search constant ν ∈ (0,1)
  double mu = 0.4;     ///< growth trigger μ ∈ (0,1), μ < ν
  double gamma = 1.9;  ///< relaxation γ ∈ (0,2)
  double beta0 = 1.0;  ///< initial β for the self-adaptive rule
  /// Constant β for the fixed-step methods (required by solvePgaA2 and
  /// solvePgaB2; ignored by the adaptive ones).
  std::optional<double> fixed_beta;
  int max_iter = 200000;
  double tol_inf = 1e-6;  ///< stop when ‖e(x, 1)‖_∞ < tol_inf
  int max_backtracks_per_iter = 60;
};

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const SolverParams& params);

struct IterationRecord {
  int k = 0;
  double beta = 0.0;                 ///< β^k used by the update
  std::optional<double> r_k;         ///< adaptive ratio (adaptive solvers)
  std::optional<double> alpha_star;  ///< α*_k (contraction solvers)
  double residual_inf = 0.0;         ///< ‖e(x^{k+1}, 1)‖_∞ after the update
  std::optional<double> objective;
  int backtracks = 0;  ///< β shrinks in this iteration
};

enum class SolveStatus { converged, max_iter, stalled };
std::string statusName(SolveStatus status);
std::ostream& operator<<(std::ostream& os, SolveStatus status);

struct SolveResult {
  Vector x_final;
  SolveStatus status = SolveStatus::max_iter;
  std::vector<IterationRecord> trace;
  std::string message;  ///< diagnostic when stalled

  int iterations() const { return int(trace.size()); }
};

/// Snapshot of one update handed to an observer. `x_tilde` is null for
/// solvers without a predictor (ISTA, ADMM, AD-LPMM).
struct IterationView {
  int k = 0;
  double beta = 0.0;
  const Vector& x;
  const Vector* x_tilde;
  const Vector& x_next;
  std::optional<double> alpha_star;
  std::optional<double> r_k;
};

struct SolveHooks {
  /// Fills IterationRecord::objective when present; never read by solvers.
  std::function<double(const Vector&)> objective;
  std::function<void(const IterationView&)> observer;
};

/// Natural residual e(x, β) = x - Prox_{βθ}(x - βF(x)); zero exactly at
/// solutions, for every β > 0.
Vector residual(const MgviProblem& p, const Vector& x, double beta);

/// One shrink of the self-adaptive rule: (2/3)·β·min{1, 1/r}.
double shrinkBeta(double beta, double r);
/// β for the next iteration: grows by 1.5 when r ≤ μ, capped at `cap`.
double growBeta(double beta, double r, double mu, double cap);

/// Generalized extragradient method. Predictor
/// x̃ = Prox_{βθ}(x - βF(x)) with β backtracked until
/// β‖F(x)-F(x̃)‖ ≤ ν‖x-x̃‖, corrector x⁺ = Prox_{βθ}(x - βF(x̃)).
SolveResult solveGem(const MgviProblem& p, const SolverParams& params,
                     const Vector& x0, const SolveHooks& hooks = {});

/// Contraction method for affine F(x) = Mx + q with M positive semidefinite.
/// Direction d = (I + βMᵀ)(x - x̃), step α* = ‖x-x̃‖²/‖d‖², update
/// x⁺ = x - γα*d. Requires affine structure on p.f.
SolveResult solvePgaA1(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks = {});

/// Fixed-β contraction method for symmetric positive semidefinite M, working
/// in the G = I + βM norm. Direction d = x - x̃, α* = ‖x-x̃‖²/‖d‖²_G,
/// update x⁺ = x - γα*d. Requires params.fixed_beta.
SolveResult solvePgaA2(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks = {});

/// Contraction method for general monotone F. Direction
/// d = (x-x̃) - β(F(x)-F(x̃)), step α* = (x-x̃)ᵀd/‖d‖² (always > 1/2),
/// update x⁺ = x - γα*d.
SolveResult solvePgaB1(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks = {});

/// Fixed-β relaxed prox-gradient step x⁺ = x - γ(x - x̃) for symmetric
/// positive semidefinite F(x) = Ax + c; contracts in the G = I - βA norm.
/// Requires params.fixed_beta < 1/λ_max(A) (validated via the spectral
/// estimate).
SolveResult solvePgaB2(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks = {});

}  // namespace mgvi
