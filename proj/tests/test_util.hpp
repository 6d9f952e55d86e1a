#pragma once

#include <cmath>

#include "mgvi/bench.hpp"
#include "mgvi/instance.hpp"
#include "mgvi/prox.hpp"
#include "mgvi/saddle.hpp"
#include "mgvi/solvers.hpp"

namespace testutil {

using namespace mgvi;

/// The hand oracle: θ = |·|, F(x) = x - 3, so 0 ∈ x* - 3 + ∂|x*| gives
/// x* = 2.
inline MgviProblem oneDimOracle() {
  MgviProblem p;
  p.theta = l1Prox(1.0);
  p.f = MonotoneOperator::affine(DenseMatrix(1, 1, {1.0}), Vector{-3.0});
  p.dim = 1;
  return p;
}

/// Lasso as MGVI: θ = λ‖·‖₁, F(x) = Mx + q with M = AᵀA, q = -Aᵀb.
struct LassoProblem {
  LassoInstance inst;
  MgviProblem problem;
  double lambda_max = 0.0;  // spectral estimate of M
};

inline LassoProblem makeLassoProblem(int m, int n, uint64_t seed,
                                     double lambda_reg = 1.0) {
  LassoProblem lp;
  lp.inst = generateLassoInstance(m, n, seed, lambda_reg);
  DenseMatrix M = gramMatrix(lp.inst.A);
  lp.lambda_max = spectralNormEstimate(M, 1e-10, 2000).value;
  Vector q = matVecTranspose(lp.inst.A, lp.inst.b);
  for (double& v : q) v = -v;
  lp.problem.theta = l1Prox(lambda_reg);
  lp.problem.f = MonotoneOperator::affine(std::move(M), std::move(q));
  lp.problem.dim = n;
  return lp;
}

inline Vector randomVector(Rng& rng, int n, double scale = 1.0) {
  Vector v(static_cast<size_t>(n));
  for (double& x : v) x = scale * rng.nextNormal();
  return v;
}

inline DenseMatrix randomMatrix(Rng& rng, int rows, int cols) {
  DenseMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = rng.nextNormal();
  return M;
}

/// ‖u - v‖²_G for G = I + s·M.
inline double gNormSq(const DenseMatrix& M, double s, const Vector& u,
                      const Vector& v) {
  Vector d = subtract(u, v);
  Vector md = matVec(M, d);
  return normTwoSquared(d) + s * dot(d, md);
}

inline double relErr(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testutil
