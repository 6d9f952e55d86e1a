#include "mgvi/solvers.hpp"

#include <cmath>
#include <ostream>

#include "solver_driver.hpp"

namespace mgvi {

void validate(const SolverParams& p) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("SolverParams: " + msg);
  };
  if (!(p.nu > 0.0 && p.nu < 1.0)) fail("nu must lie in (0,1)");
  if (!(p.mu > 0.0 && p.mu < p.nu)) fail("mu must lie in (0,nu)");
  if (!(p.gamma > 0.0 && p.gamma < 2.0)) fail("gamma must lie in (0,2)");
  if (!(p.beta0 > 0.0)) fail("beta0 must be > 0");
  if (p.fixed_beta && !(*p.fixed_beta > 0.0)) fail("fixed_beta must be > 0");
  if (p.max_iter <= 0) fail("max_iter must be > 0");
  if (!(p.tol_inf > 0.0)) fail("tol_inf must be > 0");
  if (p.max_backtracks_per_iter <= 0) fail("max_backtracks_per_iter must be > 0");
}

std::string statusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::stalled: return "stalled";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, SolveStatus status) {
  return os << statusName(status);
}

Vector residual(const MgviProblem& p, const Vector& x, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("residual: beta must be > 0");
  if (x.size() != size_t(p.dim)) {
    throw std::invalid_argument("residual: x length does not match problem dim");
  }
  Vector fx = p.f(x);
  Vector arg = addScaled(x, -beta, fx);
  return subtract(x, p.theta.prox(arg, beta));
}

double shrinkBeta(double beta, double r) {
  return (2.0 / 3.0) * beta * std::min(1.0, 1.0 / r);
}

double growBeta(double beta, double r, double mu, double cap) {
  if (r <= mu) return std::min(1.5 * beta, cap);
  return beta;
}

namespace detail {

double stoppingResidualInf(const MgviProblem& p, const Vector& x,
                           const Vector& fx) {
  Vector arg = subtract(x, fx);
  Vector px = p.theta.prox(arg, 1.0);
  double r = 0.0;
  for (size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x[i] - px[i]));
  return r;
}

PredictorResult acceptPredictor(const MgviProblem& p, const Vector& x,
                                const Vector& fx, double beta,
                                const SolverParams& params) {
  PredictorResult res;
  int backtracks = 0;
  for (;;) {
    Vector arg = addScaled(x, -beta, fx);
    Vector x_tilde = p.theta.prox(arg, beta);
    if (x_tilde == x) {
      res.outcome = PredictorResult::Outcome::exact_fixed_point;
      res.beta = beta;
      res.backtracks = backtracks;
      return res;
    }
    Vector f_tilde = p.f(x_tilde);
    Vector delta = subtract(x, x_tilde);
    Vector df = subtract(fx, f_tilde);
    const double delta_norm_sq = normTwoSquared(delta);
    const double delta_norm = std::sqrt(delta_norm_sq);
    if (delta_norm == 0.0) {
      // Differences underflowed; treat as the exact fixed point.
      res.outcome = PredictorResult::Outcome::exact_fixed_point;
      res.beta = beta;
      res.backtracks = backtracks;
      return res;
    }
    const double r = beta * normTwo(df) / delta_norm;
    if (r <= params.nu) {
      res.outcome = PredictorResult::Outcome::accepted;
      res.x_tilde = std::move(x_tilde);
      res.f_tilde = std::move(f_tilde);
      res.delta = std::move(delta);
      res.df = std::move(df);
      res.delta_norm_sq = delta_norm_sq;
      res.r = r;
      res.beta = beta;
      res.backtracks = backtracks;
      return res;
    }
    if (++backtracks > params.max_backtracks_per_iter) {
      res.outcome = PredictorResult::Outcome::backtracks_exhausted;
      res.r = r;
      res.beta = beta;
      res.backtracks = backtracks;
      return res;
    }
    beta = shrinkBeta(beta, r);
  }
}

SolveResult adaptiveLoop(const MgviProblem& p, const SolverParams& params,
                         const Vector& x0, const SolveHooks& hooks,
                         const Corrector& corrector) {
  validate(params);
  if (x0.size() != size_t(p.dim)) {
    throw std::invalid_argument("solve: x0 length does not match problem dim");
  }
  requireFinite(x0, "solve: x0");

  const double beta_cap = 1e6 * params.beta0;
  SolveResult out;
  out.x_final = x0;

  Vector x = x0;
  Vector fx = p.f(x);
  double res = stoppingResidualInf(p, x, fx);
  if (res < params.tol_inf) {
    out.status = SolveStatus::converged;
    return out;
  }

  double beta = params.beta0;
  for (int k = 0; k < params.max_iter; ++k) {
    PredictorResult pred = acceptPredictor(p, x, fx, beta, params);
    if (pred.outcome == PredictorResult::Outcome::exact_fixed_point) {
      // x = x̃ means e(x, β) = 0, so x solves the problem for this β.
      IterationRecord rec;
      rec.k = k;
      rec.beta = pred.beta;
      rec.residual_inf = res;
      rec.backtracks = pred.backtracks;
      if (hooks.objective) rec.objective = hooks.objective(x);
      out.trace.push_back(std::move(rec));
      out.x_final = x;
      out.status = SolveStatus::converged;
      out.message = "predictor fixed point: x = Prox(x - beta F(x)) exactly";
      return out;
    }
    if (pred.outcome == PredictorResult::Outcome::backtracks_exhausted) {
      out.x_final = x;
      out.status = SolveStatus::stalled;
      out.message = "backtrack budget exhausted at iteration " +
                    std::to_string(k) + " (beta=" + std::to_string(pred.beta) +
                    ", r=" + std::to_string(pred.r) + ")";
      return out;
    }

    CorrectorOutput corr;
    try {
      corr = corrector(x, fx, pred);
    } catch (const StallError& e) {
      out.x_final = x;
      out.status = SolveStatus::stalled;
      out.message = e.message + " at iteration " + std::to_string(k);
      return out;
    }

    Vector fx_next = p.f(corr.x_next);
    const double res_next = stoppingResidualInf(p, corr.x_next, fx_next);

    IterationRecord rec;
    rec.k = k;
    rec.beta = pred.beta;
    rec.r_k = pred.r;
    rec.alpha_star = corr.alpha_star;
    rec.residual_inf = res_next;
    rec.backtracks = pred.backtracks;
    if (hooks.objective) rec.objective = hooks.objective(corr.x_next);
    out.trace.push_back(std::move(rec));

    if (hooks.observer) {
      IterationView view{k,          pred.beta,   x, &pred.x_tilde,
                         corr.x_next, corr.alpha_star, pred.r};
      hooks.observer(view);
    }

    beta = growBeta(pred.beta, pred.r, params.mu, beta_cap);
    x = std::move(corr.x_next);
    fx = std::move(fx_next);
    res = res_next;
    if (res < params.tol_inf) {
      out.x_final = x;
      out.status = SolveStatus::converged;
      return out;
    }
  }
  out.x_final = x;
  out.status = SolveStatus::max_iter;
  return out;
}

namespace {

/// Common loop of the fixed-β methods PGA_a2 and PGA_b2 (no backtracking,
/// no grow rule).
SolveResult fixedBetaLoop(const MgviProblem& p, const SolverParams& params,
                          const Vector& x0, const SolveHooks& hooks,
                          double beta, const Corrector& corrector) {
  validate(params);
  if (x0.size() != size_t(p.dim)) {
    throw std::invalid_argument("solve: x0 length does not match problem dim");
  }
  requireFinite(x0, "solve: x0");

  SolveResult out;
  out.x_final = x0;

  Vector x = x0;
  Vector fx = p.f(x);
  double res = stoppingResidualInf(p, x, fx);
  if (res < params.tol_inf) {
    out.status = SolveStatus::converged;
    return out;
  }

  for (int k = 0; k < params.max_iter; ++k) {
    Vector arg = addScaled(x, -beta, fx);
    Vector x_tilde = p.theta.prox(arg, beta);
    if (x_tilde == x) {
      IterationRecord rec;
      rec.k = k;
      rec.beta = beta;
      rec.residual_inf = res;
      if (hooks.objective) rec.objective = hooks.objective(x);
      out.trace.push_back(std::move(rec));
      out.x_final = x;
      out.status = SolveStatus::converged;
      out.message = "predictor fixed point: x = Prox(x - beta F(x)) exactly";
      return out;
    }

    PredictorResult pred;
    pred.outcome = PredictorResult::Outcome::accepted;
    pred.delta = subtract(x, x_tilde);
    pred.delta_norm_sq = normTwoSquared(pred.delta);
    pred.x_tilde = std::move(x_tilde);
    pred.beta = beta;
    if (pred.delta_norm_sq == 0.0) {
      // Differences underflowed; same treatment as the exact fixed point.
      IterationRecord rec;
      rec.k = k;
      rec.beta = beta;
      rec.residual_inf = res;
      if (hooks.objective) rec.objective = hooks.objective(x);
      out.trace.push_back(std::move(rec));
      out.x_final = x;
      out.status = SolveStatus::converged;
      out.message = "predictor fixed point: x = Prox(x - beta F(x)) exactly";
      return out;
    }

    CorrectorOutput corr;
    try {
      corr = corrector(x, fx, pred);
    } catch (const StallError& e) {
      out.x_final = x;
      out.status = SolveStatus::stalled;
      out.message = e.message + " at iteration " + std::to_string(k);
      return out;
    }

    Vector fx_next = p.f(corr.x_next);
    const double res_next = stoppingResidualInf(p, corr.x_next, fx_next);

    IterationRecord rec;
    rec.k = k;
    rec.beta = beta;
    rec.alpha_star = corr.alpha_star;
    rec.residual_inf = res_next;
    if (hooks.objective) rec.objective = hooks.objective(corr.x_next);
    out.trace.push_back(std::move(rec));

    if (hooks.observer) {
      IterationView view{k,          beta,        x, &pred.x_tilde,
                         corr.x_next, corr.alpha_star, std::nullopt};
      hooks.observer(view);
    }

    x = std::move(corr.x_next);
    fx = std::move(fx_next);
    res = res_next;
    if (res < params.tol_inf) {
      out.x_final = x;
      out.status = SolveStatus::converged;
      return out;
    }
  }
  out.x_final = x;
  out.status = SolveStatus::max_iter;
  return out;
}

const AffineStructure* requireAffine(const MgviProblem& p, const char* solver) {
  const AffineStructure* af = p.f.affine();
  if (!af) {
    throw std::invalid_argument(std::string(solver) +
                                ": requires affine operator structure F(x) = Mx + q");
  }
  return af;
}

void requireSymmetric(const AffineStructure& af, const char* solver) {
  if (!af.symmetric) {
    throw std::invalid_argument(std::string(solver) +
                                ": requires a symmetric matrix (gap >= 1e-10)");
  }
}

}  // namespace

}  // namespace detail

SolveResult solveGem(const MgviProblem& p, const SolverParams& params,
                     const Vector& x0, const SolveHooks& hooks) {
  auto corrector = [&p](const Vector& x, const Vector&,
                        const detail::PredictorResult& pred) {
    detail::CorrectorOutput out;
    Vector arg = addScaled(x, -pred.beta, pred.f_tilde);
    out.x_next = p.theta.prox(arg, pred.beta);
    return out;
  };
  return detail::adaptiveLoop(p, params, x0, hooks, corrector);
}

SolveResult solvePgaA1(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks) {
  const AffineStructure* af = detail::requireAffine(p, "solvePgaA1");
  auto corrector = [&params, af](const Vector& x, const Vector&,
                                 const detail::PredictorResult& pred) {
    Vector mt_delta = matVecTranspose(*af->M, pred.delta);
    Vector d = addScaled(pred.delta, pred.beta, mt_delta);
    const double d_norm_sq = normTwoSquared(d);
    if (d_norm_sq <= 0.0) {
      throw detail::StallError{"solvePgaA1: zero corrector direction"};
    }
    detail::CorrectorOutput out;
    out.alpha_star = pred.delta_norm_sq / d_norm_sq;
    out.x_next = addScaled(x, -params.gamma * *out.alpha_star, d);
    return out;
  };
  return detail::adaptiveLoop(p, params, x0, hooks, corrector);
}

SolveResult solvePgaA2(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks) {
  validate(params);
  const AffineStructure* af = detail::requireAffine(p, "solvePgaA2");
  detail::requireSymmetric(*af, "solvePgaA2");
  if (!params.fixed_beta) {
    throw std::invalid_argument("solvePgaA2: params.fixed_beta must be set");
  }
  const double beta = *params.fixed_beta;
  auto corrector = [&params, af, beta](const Vector& x, const Vector&,
                                       const detail::PredictorResult& pred) {
    // ‖d‖²_G = ‖Δ‖² + β ΔᵀMΔ with G = I + βM.
    Vector m_delta = matVec(*af->M, pred.delta);
    const double d_g_norm_sq =
        pred.delta_norm_sq + beta * dot(pred.delta, m_delta);
    if (d_g_norm_sq <= 0.0) {
      throw detail::StallError{"solvePgaA2: nonpositive G-norm (M not PSD?)"};
    }
    detail::CorrectorOutput out;
    out.alpha_star = pred.delta_norm_sq / d_g_norm_sq;
    out.x_next = addScaled(x, -params.gamma * *out.alpha_star, pred.delta);
    return out;
  };
  return detail::fixedBetaLoop(p, params, x0, hooks, beta, corrector);
}

SolveResult solvePgaB1(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks) {
  auto corrector = [&params](const Vector& x, const Vector&,
                             const detail::PredictorResult& pred) {
    Vector d = addScaled(pred.delta, -pred.beta, pred.df);
    const double d_norm_sq = normTwoSquared(d);
    if (d_norm_sq <= 0.0) {
      throw detail::StallError{"solvePgaB1: zero corrector direction"};
    }
    const double phi = dot(pred.delta, d);
    const double alpha = phi / d_norm_sq;
    if (!(alpha > 0.5)) {
      // r ≤ ν < 1 forces 2φ - ‖d‖² ≥ (1-ν²)‖Δ‖² > 0; reaching here means
      // numerical breakdown.
      throw detail::StallError{"solvePgaB1: alpha* <= 1/2 (numerical breakdown)"};
    }
    detail::CorrectorOutput out;
    out.alpha_star = alpha;
    out.x_next = addScaled(x, -params.gamma * alpha, d);
    return out;
  };
  return detail::adaptiveLoop(p, params, x0, hooks, corrector);
}

SolveResult solvePgaB2(const MgviProblem& p, const SolverParams& params,
                       const Vector& x0, const SolveHooks& hooks) {
  validate(params);
  const AffineStructure* af = detail::requireAffine(p, "solvePgaB2");
  detail::requireSymmetric(*af, "solvePgaB2");
  if (!params.fixed_beta) {
    throw std::invalid_argument("solvePgaB2: params.fixed_beta must be set");
  }
  const double beta = *params.fixed_beta;
  if (af->M->rows() > 0) {
    SpectralEstimate est = spectralNormEstimate(*af->M, 1e-8, 300);
    if (!(beta < 1.0 / est.value)) {
      throw std::invalid_argument(
          "solvePgaB2: fixed_beta must be < 1/lambda_max(A) (estimate " +
          std::to_string(est.value) + ")");
    }
  }
  auto corrector = [&params](const Vector& x, const Vector&,
                             const detail::PredictorResult& pred) {
    detail::CorrectorOutput out;
    out.x_next = addScaled(x, -params.gamma, pred.delta);
    return out;
  };
  return detail::fixedBetaLoop(p, params, x0, hooks, beta, corrector);
}

}  // namespace mgvi
