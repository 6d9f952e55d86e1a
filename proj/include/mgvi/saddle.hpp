#pragma once

#include "mgvi/core.hpp"
#include "mgvi/prox.hpp"
#include "mgvi/solvers.hpp"

namespace mgvi {

/// The separable two-block model
///   min θ₁(x) + θ₂(y)  s.t.  Ax + By = c,
/// with A m×n and B m×q. Either primal block may be empty (n = 0 or q = 0);
/// an empty block contributes nothing and its prox is skipped.
class SaddleProblem {
 public:
  SaddleProblem(ProxFunction theta1, ProxFunction theta2, DenseMatrix A,
                DenseMatrix B, Vector c);

  /// Single-block convenience: min θ₁(x) s.t. Ax = c.
  static SaddleProblem singleBlock(ProxFunction theta1, DenseMatrix A, Vector c);

  int n() const { return n_; }
  int q() const { return q_; }
  int m() const { return m_; }
  int liftedDim() const { return n_ + q_ + m_; }

  const DenseMatrix& A() const { return *A_; }
  const DenseMatrix& B() const { return *B_; }
  const Vector& c() const { return *c_; }
  const ProxFunction& theta1() const { return theta1_; }
  const ProxFunction& theta2() const { return theta2_; }

  std::shared_ptr<const DenseMatrix> sharedA() const { return A_; }
  std::shared_ptr<const DenseMatrix> sharedB() const { return B_; }
  std::shared_ptr<const Vector> sharedC() const { return c_; }

 private:
  ProxFunction theta1_;
  ProxFunction theta2_;
  std::shared_ptr<const DenseMatrix> A_;
  std::shared_ptr<const DenseMatrix> B_;
  std::shared_ptr<const Vector> c_;
  int n_ = 0, q_ = 0, m_ = 0;
};

struct SaddlePoint {
  Vector x;
  Vector y;
  Vector lambda;
};

SaddlePoint splitPoint(const SaddleProblem& sp, const Vector& z);
Vector concatPoint(const SaddlePoint& z);

/// Lifts the problem into MGVI form: θ(x,y,λ) = θ₁(x) + θ₂(y) (the λ-block
/// carries the zero function) and the skew block operator
///   F(x,y,λ) = (-Aᵀλ, -Bᵀλ, Ax + By - c).
/// `lanes` sets how many blocks the lifted θ and F evaluate concurrently;
/// the result is bitwise identical for every lane count.
MgviProblem lift(const SaddleProblem& sp, int lanes = 1);

/// F(z) in block form: (-Aᵀλ, -Bᵀλ, Ax + By - c).
SaddlePoint saddleApplyBlocks(const SaddleProblem& sp, const SaddlePoint& z,
                              int lanes = 1);

/// The adaptive ratio of the two-block predictor,
///   r = β ‖(Aᵀδλ; Bᵀδλ; Aδx + Bδy)‖ / ‖(δx; δy; δλ)‖,  δ• = • - •̃,
/// which equals β‖F(z) - F(z̃)‖/‖z - z̃‖ for the lifted F. Requires z ≠ z̃.
double saddleRk(const SaddleProblem& sp, const SaddlePoint& z,
                const SaddlePoint& z_tilde, double beta);

enum class SaddleMethod { gem, pga_a1, pga_b1 };

/// Runs the chosen predictor-corrector method on the lifted problem with
/// block-parallel predictor and corrector evaluation. GEM iterates here are
/// bitwise identical to solveGem(lift(sp)); PGA_a1 and PGA_b1 share one
/// corrector direction (the lifted operator is skew) and differ only in α*.
SolveResult solveSaddle(const SaddleProblem& sp, SaddleMethod method,
                        const SolverParams& params, const SaddlePoint& z0,
                        int lanes = 1, const SolveHooks& hooks = {});

/// α* of the two contraction methods evaluated on one shared state:
/// a1 uses ‖z-z̃‖²/‖d‖², b1 uses (z-z̃)ᵀd/‖d‖², with the common direction
/// d = (z-z̃) - β(F(z)-F(z̃)).
struct SaddleAlphaPair {
  double a1 = 0.0;
  double b1 = 0.0;
};
SaddleAlphaPair saddleAlphaStars(const SaddleProblem& sp, const SaddlePoint& z,
                                 const SaddlePoint& z_tilde, double beta);

}  // namespace mgvi
