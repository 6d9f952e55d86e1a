#include "mgvi/baselines.hpp"

#include <cmath>

#include "mgvi/prox.hpp"

namespace mgvi {

void validate(const AdmmParams& p) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("AdmmParams: " + msg);
  };
  if (!(p.rho > 0.0)) fail("rho must be > 0");
  if (p.alpha_lin && !(*p.alpha_lin > 0.0)) fail("alpha_lin must be > 0");
  if (p.beta_lin && !(*p.beta_lin > 0.0)) fail("beta_lin must be > 0");
  if (p.max_iter <= 0) fail("max_iter must be > 0");
  if (!(p.tol_succ > 0.0)) fail("tol_succ must be > 0");
}

SolveResult solveIsta(const DenseMatrix& A, const Vector& b, double lambda_reg,
                      std::optional<double> step, const Vector& x0,
                      double tol_inf, int max_iter, const SolveHooks& hooks) {
  if (size_t(A.rows()) != b.size()) {
    throw std::invalid_argument("solveIsta: A rows != b length");
  }
  if (size_t(A.cols()) != x0.size()) {
    throw std::invalid_argument("solveIsta: A cols != x0 length");
  }
  if (!(lambda_reg > 0.0)) throw std::invalid_argument("solveIsta: lambda_reg must be > 0");
  if (!(tol_inf > 0.0)) throw std::invalid_argument("solveIsta: tol_inf must be > 0");
  if (max_iter <= 0) throw std::invalid_argument("solveIsta: max_iter must be > 0");
  requireFinite(x0, "solveIsta: x0");

  const double lmax = [&] {
    SpectralEstimate est = spectralNormEstimate(A, 1e-9, 500);
    return est.value * est.value;  // λ_max(AᵀA) = σ_max(A)²
  }();
  double s = step.value_or(0.99 / lmax);
  if (!(s > 0.0)) throw std::invalid_argument("solveIsta: step must be > 0");
  if (s > 1.0 / lmax) {
    throw std::invalid_argument("solveIsta: step exceeds 1/lambda_max(A'A) (estimate " +
                                std::to_string(1.0 / lmax) + ")");
  }

  SolveResult out;
  out.x_final = x0;

  auto gradient = [&](const Vector& x) {
    Vector ax = matVec(A, x);
    for (size_t i = 0; i < ax.size(); ++i) ax[i] -= b[i];
    return matVecTranspose(A, ax);
  };
  auto residualInf = [&](const Vector& x, const Vector& grad) {
    Vector px = softThreshold(subtract(x, grad), lambda_reg);
    double r = 0.0;
    for (size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x[i] - px[i]));
    return r;
  };

  Vector x = x0;
  Vector g = gradient(x);
  double res = residualInf(x, g);
  if (res < tol_inf) {
    out.status = SolveStatus::converged;
    return out;
  }

  for (int k = 0; k < max_iter; ++k) {
    Vector x_next = softThreshold(addScaled(x, -s, g), s * lambda_reg);
    Vector g_next = gradient(x_next);
    const double res_next = residualInf(x_next, g_next);

    IterationRecord rec;
    rec.k = k;
    rec.beta = s;
    rec.residual_inf = res_next;
    if (hooks.objective) rec.objective = hooks.objective(x_next);
    out.trace.push_back(std::move(rec));
    if (hooks.observer) {
      IterationView view{k, s, x, nullptr, x_next, std::nullopt, std::nullopt};
      hooks.observer(view);
    }

    x = std::move(x_next);
    g = std::move(g_next);
    res = res_next;
    if (res < tol_inf) {
      out.x_final = x;
      out.status = SolveStatus::converged;
      return out;
    }
  }
  out.x_final = x;
  out.status = SolveStatus::max_iter;
  return out;
}

AdmmSubSolver admmIdentityBlockSolver(ProxFunction theta, double sign) {
  if (sign != 1.0 && sign != -1.0) {
    throw std::invalid_argument("admmIdentityBlockSolver: sign must be +1 or -1");
  }
  return [theta = std::move(theta), sign](const Vector& target, double rho) {
    // argmin θ(w) + (ρ/2)‖sign·w - t‖² = Prox_{(1/ρ)θ}(sign·t)
    if (sign > 0.0) return theta.prox(target, 1.0 / rho);
    return theta.prox(scale(-1.0, target), 1.0 / rho);
  };
}

namespace {

/// Ax + By - c with empty blocks skipped.
Vector constraintResidual(const SaddleProblem& sp, const Vector& x,
                          const Vector& y) {
  Vector t(sp.m(), 0.0);
  if (sp.n() > 0) t = matVec(sp.A(), x);
  if (sp.q() > 0) {
    Vector by = matVec(sp.B(), y);
    for (int i = 0; i < sp.m(); ++i) t[i] += by[i];
  }
  for (int i = 0; i < sp.m(); ++i) t[i] -= sp.c()[i];
  return t;
}

double succDiffInf(const Vector& x_next, const Vector& x, const Vector& l_next,
                   const Vector& l) {
  double r = 0.0;
  for (size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x_next[i] - x[i]));
  for (size_t i = 0; i < l.size(); ++i) r = std::max(r, std::abs(l_next[i] - l[i]));
  return r;
}

void checkZ0(const SaddleProblem& sp, const SaddlePoint& z0, const char* who) {
  if (z0.x.size() != size_t(sp.n()) || z0.y.size() != size_t(sp.q()) ||
      z0.lambda.size() != size_t(sp.m())) {
    throw std::invalid_argument(std::string(who) +
                                ": z0 block lengths do not match problem");
  }
}

}  // namespace

SolveResult solveAdmm(const SaddleProblem& sp, AdmmSubSolver solve_x,
                      AdmmSubSolver solve_y, const AdmmParams& params,
                      const SaddlePoint& z0, const SolveHooks& hooks) {
  validate(params);
  checkZ0(sp, z0, "solveAdmm");
  if (sp.n() > 0 && !solve_x) {
    throw std::invalid_argument("solveAdmm: no sub-solver for the x block");
  }
  if (sp.q() > 0 && !solve_y) {
    throw std::invalid_argument("solveAdmm: no sub-solver for the y block");
  }
  const double rho = params.rho;

  SolveResult out;
  Vector x = z0.x, y = z0.y, lambda = z0.lambda;
  out.x_final = concatPoint({x, y, lambda});

  for (int k = 0; k < params.max_iter; ++k) {
    Vector x_next = x;
    if (sp.n() > 0) {
      // target for ‖Ax - t‖²: t = c - By - (1/ρ)λ
      Vector t(sp.m());
      Vector by(sp.m(), 0.0);
      if (sp.q() > 0) by = matVec(sp.B(), y);
      for (int i = 0; i < sp.m(); ++i) t[i] = sp.c()[i] - by[i] - lambda[i] / rho;
      x_next = solve_x(t, rho);
      if (x_next.size() != size_t(sp.n())) {
        throw std::runtime_error("solveAdmm: x sub-solver returned wrong length");
      }
    }
    Vector y_next = y;
    if (sp.q() > 0) {
      Vector t(sp.m());
      Vector ax(sp.m(), 0.0);
      if (sp.n() > 0) ax = matVec(sp.A(), x_next);
      for (int i = 0; i < sp.m(); ++i) t[i] = sp.c()[i] - ax[i] - lambda[i] / rho;
      y_next = solve_y(t, rho);
      if (y_next.size() != size_t(sp.q())) {
        throw std::runtime_error("solveAdmm: y sub-solver returned wrong length");
      }
    }
    Vector cres = constraintResidual(sp, x_next, y_next);
    Vector lambda_next = addScaled(lambda, rho, cres);

    const double diff = succDiffInf(x_next, x, lambda_next, lambda);

    IterationRecord rec;
    rec.k = k;
    rec.beta = rho;
    rec.residual_inf = diff;
    if (hooks.objective) {
      rec.objective = hooks.objective(concatPoint({x_next, y_next, lambda_next}));
    }
    out.trace.push_back(std::move(rec));
    if (hooks.observer) {
      Vector z = concatPoint({x, y, lambda});
      Vector z_next = concatPoint({x_next, y_next, lambda_next});
      IterationView view{k, rho, z, nullptr, z_next, std::nullopt, std::nullopt};
      hooks.observer(view);
    }

    x = std::move(x_next);
    y = std::move(y_next);
    lambda = std::move(lambda_next);

    if (diff < params.tol_succ) {
      out.x_final = concatPoint({x, y, lambda});
      out.status = SolveStatus::converged;
      return out;
    }
  }
  out.x_final = concatPoint({x, y, lambda});
  out.status = SolveStatus::max_iter;
  return out;
}

SolveResult solveAdlpmm(const SaddleProblem& sp, const AdmmParams& params,
                        const SaddlePoint& z0, const SolveHooks& hooks) {
  validate(params);
  checkZ0(sp, z0, "solveAdlpmm");
  if (sp.n() > 0 && !sp.theta1().prox) {
    throw std::invalid_argument("solveAdlpmm: theta1.prox is required");
  }
  if (sp.q() > 0 && !sp.theta2().prox) {
    throw std::invalid_argument("solveAdlpmm: theta2.prox is required");
  }
  const double rho = params.rho;

  auto spectralBound = [&](const DenseMatrix& M) {
    SpectralEstimate est = spectralNormEstimate(M, 1e-9, 500);
    return est.value * est.value;
  };

  double alpha = 0.0;
  if (sp.n() > 0) {
    const double bound = rho * spectralBound(sp.A());
    alpha = params.alpha_lin.value_or(1.01 * bound);
    if (alpha < bound) {
      throw std::invalid_argument(
          "solveAdlpmm: alpha_lin below rho*lambda_max(A'A) (bound estimate " +
          std::to_string(bound) + ")");
    }
  }
  double beta = 0.0;
  if (sp.q() > 0) {
    const double bound = rho * spectralBound(sp.B());
    beta = params.beta_lin.value_or(1.01 * bound);
    if (beta < bound) {
      throw std::invalid_argument(
          "solveAdlpmm: beta_lin below rho*lambda_max(B'B) (bound estimate " +
          std::to_string(bound) + ")");
    }
  }

  SolveResult out;
  Vector x = z0.x, y = z0.y, lambda = z0.lambda;
  out.x_final = concatPoint({x, y, lambda});

  for (int k = 0; k < params.max_iter; ++k) {
    Vector x_next = x;
    if (sp.n() > 0) {
      // w = Ax + By - c + (1/ρ)λ
      Vector w = constraintResidual(sp, x, y);
      for (int i = 0; i < sp.m(); ++i) w[i] += lambda[i] / rho;
      Vector atw = matVecTranspose(sp.A(), w);
      x_next = sp.theta1().prox(addScaled(x, -rho / alpha, atw), 1.0 / alpha);
    }
    Vector y_next = y;
    if (sp.q() > 0) {
      Vector w = constraintResidual(sp, x_next, y);
      for (int i = 0; i < sp.m(); ++i) w[i] += lambda[i] / rho;
      Vector btw = matVecTranspose(sp.B(), w);
      y_next = sp.theta2().prox(addScaled(y, -rho / beta, btw), 1.0 / beta);
    }
    Vector cres = constraintResidual(sp, x_next, y_next);
    Vector lambda_next = addScaled(lambda, rho, cres);

    const double diff = succDiffInf(x_next, x, lambda_next, lambda);

    IterationRecord rec;
    rec.k = k;
    rec.beta = rho;
    rec.residual_inf = diff;
    if (hooks.objective) {
      rec.objective = hooks.objective(concatPoint({x_next, y_next, lambda_next}));
    }
    out.trace.push_back(std::move(rec));
    if (hooks.observer) {
      Vector z = concatPoint({x, y, lambda});
      Vector z_next = concatPoint({x_next, y_next, lambda_next});
      IterationView view{k, rho, z, nullptr, z_next, std::nullopt, std::nullopt};
      hooks.observer(view);
    }

    x = std::move(x_next);
    y = std::move(y_next);
    lambda = std::move(lambda_next);

    if (diff < params.tol_succ) {
      out.x_final = concatPoint({x, y, lambda});
      out.status = SolveStatus::converged;
      return out;
    }
  }
  out.x_final = concatPoint({x, y, lambda});
  out.status = SolveStatus::max_iter;
  return out;
}

}  // namespace mgvi
