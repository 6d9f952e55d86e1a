#pragma once

#include "mgvi/solvers.hpp"

namespace mgvi::detail {

/// Thrown by correctors on numerical breakdown; the driver turns it into
/// SolveStatus::stalled.
struct StallError {
  std::string message;
};

/// An accepted predictor x̃ = Prox_{βθ}(x - βF(x)) with r ≤ ν, plus the
/// quantities every corrector reuses.
struct PredictorResult {
  enum class Outcome { accepted, exact_fixed_point, backtracks_exhausted };
  Outcome outcome = Outcome::accepted;
  Vector x_tilde;
  Vector f_tilde;        ///< F(x̃)
  Vector delta;          ///< x - x̃
  Vector df;             ///< F(x) - F(x̃)
  double delta_norm_sq = 0.0;
  double r = 0.0;        ///< β‖F(x)-F(x̃)‖ / ‖x-x̃‖
  double beta = 0.0;     ///< accepted β (after any shrinks)
  int backtracks = 0;
};

PredictorResult acceptPredictor(const MgviProblem& p, const Vector& x,
                                const Vector& fx, double beta,
                                const SolverParams& params);

struct CorrectorOutput {
  Vector x_next;
  std::optional<double> alpha_star;
};

using Corrector = std::function<CorrectorOutput(
    const Vector& x, const Vector& fx, const PredictorResult& pred)>;

/// The common loop of GEM, PGA_a1 and PGA_b1: stopping test on ‖e(x,1)‖_∞,
/// β backtracked until r ≤ ν, per-method corrector, then the grow rule
/// β⁺ = 1.5β when r ≤ μ (capped at 1e6·β⁰).
SolveResult adaptiveLoop(const MgviProblem& p, const SolverParams& params,
                         const Vector& x0, const SolveHooks& hooks,
                         const Corrector& corrector);

/// ‖e(x, 1)‖_∞ reusing an already computed F(x).
double stoppingResidualInf(const MgviProblem& p, const Vector& x,
                           const Vector& fx);

}  // namespace mgvi::detail
