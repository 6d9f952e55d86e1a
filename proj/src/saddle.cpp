#include "mgvi/saddle.hpp"

#include <cmath>

#include "lanes.hpp"
#include "solver_driver.hpp"

namespace mgvi {

namespace {

/// F(z) for the skew block operator, writing the three output blocks on up
/// to `lanes` threads. The blocks read disjoint slices of z and write
/// disjoint slices of the output, so the result does not depend on lanes.
Vector applySaddleOperator(const SaddleStructure& st, const Vector& z,
                           int lanes) {
  const int n = st.n, q = st.q, m = st.m;
  if (z.size() != size_t(n + q + m)) {
    throw std::invalid_argument("saddle operator: input length mismatch");
  }
  Vector out(z.size());
  const Vector lambda(z.begin() + n + q, z.end());

  std::vector<std::function<void()>> tasks;
  if (n > 0) {
    tasks.push_back([&] {
      Vector t = matVecTranspose(*st.A, lambda);
      for (int i = 0; i < n; ++i) out[i] = -t[i];
    });
  }
  if (q > 0) {
    tasks.push_back([&] {
      Vector t = matVecTranspose(*st.B, lambda);
      for (int i = 0; i < q; ++i) out[n + i] = -t[i];
    });
  }
  tasks.push_back([&] {
    Vector t(m, 0.0);
    if (n > 0) {
      Vector xs(z.begin(), z.begin() + n);
      t = matVec(*st.A, xs);
    }
    if (q > 0) {
      Vector ys(z.begin() + n, z.begin() + n + q);
      Vector by = matVec(*st.B, ys);
      for (int i = 0; i < m; ++i) t[i] += by[i];
    }
    for (int i = 0; i < m; ++i) out[n + q + i] = t[i] - (*st.c)[i];
  });
  detail::runOnLanes(std::move(tasks), lanes);
  return out;
}

/// The corrector direction of Algorithms PGA_a1/PGA_b1 for the two-block
/// problem, built from the difference blocks δ = z - z̃:
///   d = (δx + βAᵀδλ, δy + βBᵀδλ, δλ - β(Aδx + Bδy)).
/// Applying the matrices to the differences (rather than differencing two
/// operator values) keeps rounding at the scale of ‖δ‖.
Vector saddleDirectionFromDelta(const SaddleStructure& st, const Vector& delta,
                                double beta, int lanes) {
  const int n = st.n, q = st.q, m = st.m;
  Vector d(delta.size());
  const Vector dl(delta.begin() + n + q, delta.end());

  std::vector<std::function<void()>> tasks;
  if (n > 0) {
    tasks.push_back([&] {
      Vector t = matVecTranspose(*st.A, dl);
      for (int i = 0; i < n; ++i) d[i] = delta[i] + beta * t[i];
    });
  }
  if (q > 0) {
    tasks.push_back([&] {
      Vector t = matVecTranspose(*st.B, dl);
      for (int i = 0; i < q; ++i) d[n + i] = delta[n + i] + beta * t[i];
    });
  }
  tasks.push_back([&] {
    Vector t(m, 0.0);
    if (n > 0) {
      Vector dx(delta.begin(), delta.begin() + n);
      t = matVec(*st.A, dx);
    }
    if (q > 0) {
      Vector dy(delta.begin() + n, delta.begin() + n + q);
      Vector by = matVec(*st.B, dy);
      for (int i = 0; i < m; ++i) t[i] += by[i];
    }
    for (int i = 0; i < m; ++i) d[n + q + i] = delta[n + q + i] - beta * t[i];
  });
  detail::runOnLanes(std::move(tasks), lanes);
  return d;
}

}  // namespace

MonotoneOperator MonotoneOperator::saddle(std::shared_ptr<const DenseMatrix> A,
                                          std::shared_ptr<const DenseMatrix> B,
                                          std::shared_ptr<const Vector> c,
                                          int lanes) {
  if (!c) throw std::invalid_argument("saddle operator: c is required");
  SaddleStructure st;
  st.m = int(c->size());
  if (A && !A->empty()) {
    if (A->rows() != st.m) throw std::invalid_argument("saddle operator: A rows != c length");
    st.A = std::move(A);
    st.n = st.A->cols();
  }
  if (B && !B->empty()) {
    if (B->rows() != st.m) throw std::invalid_argument("saddle operator: B rows != c length");
    st.B = std::move(B);
    st.q = st.B->cols();
  }
  st.c = std::move(c);
  MonotoneOperator op;
  op.apply_ = [st, lanes](const Vector& z) {
    return applySaddleOperator(st, z, lanes);
  };
  op.structure_ = st;
  return op;
}

SaddleProblem::SaddleProblem(ProxFunction theta1, ProxFunction theta2,
                             DenseMatrix A, DenseMatrix B, Vector c)
    : theta1_(std::move(theta1)), theta2_(std::move(theta2)) {
  m_ = int(c.size());
  n_ = A.empty() ? 0 : A.cols();
  q_ = B.empty() ? 0 : B.cols();
  if (n_ > 0 && A.rows() != m_) {
    throw std::invalid_argument("SaddleProblem: A must have c.length rows");
  }
  if (q_ > 0 && B.rows() != m_) {
    throw std::invalid_argument("SaddleProblem: B must have c.length rows");
  }
  if (n_ > 0 && !theta1_.prox) {
    throw std::invalid_argument("SaddleProblem: theta1.prox is required");
  }
  if (q_ > 0 && !theta2_.prox) {
    throw std::invalid_argument("SaddleProblem: theta2.prox is required");
  }
  A_ = std::make_shared<const DenseMatrix>(std::move(A));
  B_ = std::make_shared<const DenseMatrix>(std::move(B));
  c_ = std::make_shared<const Vector>(std::move(c));
}

SaddleProblem SaddleProblem::singleBlock(ProxFunction theta1, DenseMatrix A,
                                         Vector c) {
  return SaddleProblem(std::move(theta1), ProxFunction{}, std::move(A),
                       DenseMatrix(), std::move(c));
}

SaddlePoint splitPoint(const SaddleProblem& sp, const Vector& z) {
  if (z.size() != size_t(sp.liftedDim())) {
    throw std::invalid_argument("splitPoint: length mismatch");
  }
  SaddlePoint p;
  p.x.assign(z.begin(), z.begin() + sp.n());
  p.y.assign(z.begin() + sp.n(), z.begin() + sp.n() + sp.q());
  p.lambda.assign(z.begin() + sp.n() + sp.q(), z.end());
  return p;
}

Vector concatPoint(const SaddlePoint& z) {
  Vector out;
  out.reserve(z.x.size() + z.y.size() + z.lambda.size());
  out.insert(out.end(), z.x.begin(), z.x.end());
  out.insert(out.end(), z.y.begin(), z.y.end());
  out.insert(out.end(), z.lambda.begin(), z.lambda.end());
  return out;
}

MgviProblem lift(const SaddleProblem& sp, int lanes) {
  SeparableBlockProx blocks;
  if (sp.n() > 0) blocks.addBlock(sp.theta1(), sp.n());
  if (sp.q() > 0) blocks.addBlock(sp.theta2(), sp.q());
  blocks.addBlock(zeroProx(), sp.m());

  MgviProblem p;
  p.theta = blocks.asProxFunction(lanes);
  p.f = MonotoneOperator::saddle(sp.sharedA(), sp.sharedB(), sp.sharedC(), lanes);
  p.dim = sp.liftedDim();
  return p;
}

SaddlePoint saddleApplyBlocks(const SaddleProblem& sp, const SaddlePoint& z,
                              int lanes) {
  MonotoneOperator f =
      MonotoneOperator::saddle(sp.sharedA(), sp.sharedB(), sp.sharedC(), lanes);
  return splitPoint(sp, f(concatPoint(z)));
}

double saddleRk(const SaddleProblem& sp, const SaddlePoint& z,
                const SaddlePoint& z_tilde, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("saddleRk: beta must be > 0");
  Vector dx = subtract(z.x, z_tilde.x);
  Vector dy = subtract(z.y, z_tilde.y);
  Vector dl = subtract(z.lambda, z_tilde.lambda);

  double den_sq = normTwoSquared(dx) + normTwoSquared(dy) + normTwoSquared(dl);
  if (den_sq == 0.0) {
    throw std::invalid_argument("saddleRk: z = z_tilde");
  }

  double num_sq = 0.0;
  if (sp.n() > 0) num_sq += normTwoSquared(matVecTranspose(sp.A(), dl));
  if (sp.q() > 0) num_sq += normTwoSquared(matVecTranspose(sp.B(), dl));
  Vector t(sp.m(), 0.0);
  if (sp.n() > 0) t = matVec(sp.A(), dx);
  if (sp.q() > 0) {
    Vector by = matVec(sp.B(), dy);
    for (int i = 0; i < sp.m(); ++i) t[i] += by[i];
  }
  num_sq += normTwoSquared(t);

  return beta * std::sqrt(num_sq) / std::sqrt(den_sq);
}

SaddleAlphaPair saddleAlphaStars(const SaddleProblem& sp, const SaddlePoint& z,
                                 const SaddlePoint& z_tilde, double beta) {
  MgviProblem p = lift(sp, 1);
  const SaddleStructure* st = p.f.saddle();
  Vector delta = subtract(concatPoint(z), concatPoint(z_tilde));
  Vector d = saddleDirectionFromDelta(*st, delta, beta, 1);
  const double d_norm_sq = normTwoSquared(d);
  if (d_norm_sq == 0.0) {
    throw std::invalid_argument("saddleAlphaStars: zero direction");
  }
  SaddleAlphaPair pair;
  pair.a1 = normTwoSquared(delta) / d_norm_sq;
  pair.b1 = dot(delta, d) / d_norm_sq;
  return pair;
}

SolveResult solveSaddle(const SaddleProblem& sp, SaddleMethod method,
                        const SolverParams& params, const SaddlePoint& z0,
                        int lanes, const SolveHooks& hooks) {
  if (z0.x.size() != size_t(sp.n()) || z0.y.size() != size_t(sp.q()) ||
      z0.lambda.size() != size_t(sp.m())) {
    throw std::invalid_argument("solveSaddle: z0 block lengths do not match problem");
  }
  MgviProblem p = lift(sp, lanes);
  Vector x0 = concatPoint(z0);

  if (method == SaddleMethod::gem) return solveGem(p, params, x0, hooks);

  // PGA_a1 and PGA_b1 share the corrector direction here (the lifted
  // operator is skew, so (I + βMᵀ)(z - z̃) = (z - z̃) - β(F(z) - F(z̃)));
  // they differ only in α*.
  const SaddleStructure* st = p.f.saddle();
  const bool use_a1 = method == SaddleMethod::pga_a1;
  auto corrector = [&params, st, lanes, use_a1](
                       const Vector& x, const Vector&,
                       const detail::PredictorResult& pred) {
    Vector d = saddleDirectionFromDelta(*st, pred.delta, pred.beta, lanes);
    const double d_norm_sq = normTwoSquared(d);
    if (d_norm_sq <= 0.0) {
      throw detail::StallError{"solveSaddle: zero corrector direction"};
    }
    detail::CorrectorOutput out;
    const double alpha = use_a1 ? pred.delta_norm_sq / d_norm_sq
                                : dot(pred.delta, d) / d_norm_sq;
    if (!use_a1 && !(alpha > 0.5)) {
      throw detail::StallError{"solveSaddle(pga_b1): alpha* <= 1/2 (numerical breakdown)"};
    }
    out.alpha_star = alpha;
    out.x_next = addScaled(x, -params.gamma * alpha, d);
    return out;
  };
  return detail::adaptiveLoop(p, params, x0, hooks, corrector);
}

}  // namespace mgvi
