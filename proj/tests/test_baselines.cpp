#include <doctest.h>

#include "test_util.hpp"

using namespace mgvi;
using testutil::randomVector;

namespace {

/// θ₁(x) = ½‖x - b‖² with its closed-form prox.
ProxFunction quadraticMoveProx(std::shared_ptr<const Vector> b) {
  ProxFunction p;
  p.prox = [b](const Vector& v, double tau) {
    Vector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = (v[i] + tau * (*b)[i]) / (1.0 + tau);
    return r;
  };
  p.value = [b](const Vector& x) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += (x[i] - (*b)[i]) * (x[i] - (*b)[i]);
    return 0.5 * s;
  };
  return p;
}

/// Lasso splitting with identity blocks: min ½‖x-b‖² + w‖y‖₁ s.t. x - y = 0.
SaddleProblem identitySplit(std::shared_ptr<const Vector> b, double w) {
  const int n = int(b->size());
  DenseMatrix Bneg(n, n);
  for (int i = 0; i < n; ++i) Bneg(i, i) = -1.0;
  return SaddleProblem(quadraticMoveProx(b), l1Prox(w), DenseMatrix::identity(n),
                       Bneg, Vector(size_t(n), 0.0));
}

}  // namespace

TEST_SUITE_BEGIN("baselines");

TEST_CASE("ISTA solves the 1-d oracle and trivial cases") {
  // b = 0 from x0 = 0: already optimal.
  DenseMatrix A = DenseMatrix::identity(3);
  SolveResult r0 = solveIsta(A, Vector(3, 0.0), 1.0, std::nullopt, Vector(3, 0.0),
                             1e-6, 1000);
  CHECK(r0.status == SolveStatus::converged);
  CHECK(r0.iterations() == 0);

  // min ½(x-3)² + |x| has solution 2.
  SolveResult r1 = solveIsta(DenseMatrix(1, 1, {1.0}), {3.0}, 1.0, std::nullopt,
                             {0.0}, 1e-8, 10000);
  CHECK(r1.status == SolveStatus::converged);
  CHECK(std::abs(r1.x_final[0] - 2.0) < 1e-6);
}

TEST_CASE("ISTA rejects oversized steps") {
  CHECK_THROWS_AS(solveIsta(DenseMatrix(1, 1, {2.0}), {1.0}, 1.0, 0.3, {0.0},
                            1e-6, 100),
                  std::invalid_argument);  // 1/λ_max(A'A) = 0.25
  CHECK_NOTHROW(solveIsta(DenseMatrix(1, 1, {2.0}), {1.0}, 1.0, 0.25, {0.0},
                          1e-6, 100000));
}

TEST_CASE("ADMM on the identity splitting matches the soft-threshold solution") {
  Rng rng(101);
  auto b = std::make_shared<const Vector>(randomVector(rng, 7, 2.0));
  const double w = 0.6;
  SaddleProblem sp = identitySplit(b, w);

  AdmmParams prm;
  prm.rho = 1.0;
  prm.tol_succ = 1e-10;
  SaddlePoint z0;
  z0.x = Vector(7, 0.0);
  z0.y = Vector(7, 0.0);
  z0.lambda = Vector(7, 0.0);

  SolveResult r = solveAdmm(sp, admmIdentityBlockSolver(quadraticMoveProx(b), 1.0),
                            admmIdentityBlockSolver(l1Prox(w), -1.0), prm, z0);
  REQUIRE(r.status == SolveStatus::converged);
  SaddlePoint zf = splitPoint(sp, r.x_final);
  Vector want = softThreshold(*b, w);
  CHECK(normInf(subtract(zf.x, want)) < 1e-6);
  CHECK(normInf(subtract(zf.y, want)) < 1e-6);

  // Long-run ISTA on the same problem as an independent oracle.
  SolveResult ista = solveIsta(DenseMatrix::identity(7), *b, w, std::nullopt,
                               Vector(7, 1.0), 1e-12, 100000);
  CHECK(normInf(subtract(zf.x, ista.x_final)) < 1e-6);
}

TEST_CASE("ADMM started at a saddle point does not move") {
  Rng rng(103);
  auto b = std::make_shared<const Vector>(randomVector(rng, 5, 2.0));
  const double w = 0.9;
  SaddleProblem sp = identitySplit(b, w);

  Vector x_star = softThreshold(*b, w);
  SaddlePoint z0;
  z0.x = x_star;
  z0.y = x_star;
  z0.lambda = subtract(*b, x_star);  // stationarity of the x-update

  AdmmParams prm;
  prm.rho = 2.7;  // arbitrary penalty
  SolveResult r = solveAdmm(sp, admmIdentityBlockSolver(quadraticMoveProx(b), 1.0),
                            admmIdentityBlockSolver(l1Prox(w), -1.0), prm, z0);
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.iterations() <= 2);
  SaddlePoint zf = splitPoint(sp, r.x_final);
  CHECK(normInf(subtract(zf.x, x_star)) < 1e-9);
}

TEST_CASE("ADMM requires sub-solvers for the populated blocks") {
  Rng rng(105);
  auto b = std::make_shared<const Vector>(randomVector(rng, 3));
  SaddleProblem sp = identitySplit(b, 1.0);
  SaddlePoint z0;
  z0.x = Vector(3, 0.0);
  z0.y = Vector(3, 0.0);
  z0.lambda = Vector(3, 0.0);
  CHECK_THROWS_AS(solveAdmm(sp, nullptr, admmIdentityBlockSolver(l1Prox(1.0), -1.0),
                            AdmmParams{}, z0),
                  std::invalid_argument);
}

TEST_CASE("AD-LPMM multiplier update identity holds bitwise") {
  LassoInstance gen = generateLassoInstance(14, 18, 107);
  SaddleProblem sp = SaddleProblem::singleBlock(l1Prox(1.0), gen.A, gen.b);
  SaddlePoint z0;
  z0.x = Vector(18, 1.0);
  z0.lambda = Vector(14, 0.0);

  AdmmParams prm;
  prm.max_iter = 300;
  prm.tol_succ = 1e-300;  // run all iterations
  int checked = 0;
  SolveHooks hooks;
  hooks.observer = [&](const IterationView& view) {
    SaddlePoint before = splitPoint(sp, view.x);
    SaddlePoint after = splitPoint(sp, view.x_next);
    // Recompute step (c): λ⁺ = λ + ρ(Ax⁺ - c).
    Vector cres = matVec(sp.A(), after.x);
    for (int i = 0; i < sp.m(); ++i) cres[i] -= sp.c()[i];
    Vector lambda_want = addScaled(before.lambda, prm.rho, cres);
    CHECK(after.lambda == lambda_want);
    ++checked;
  };
  solveAdlpmm(sp, prm, z0, hooks);
  CHECK(checked == 300);
}

TEST_CASE("AD-LPMM converges on basis pursuit and restarts cleanly") {
  LassoInstance gen = generateLassoInstance(20, 26, 109);
  SaddleProblem sp = SaddleProblem::singleBlock(l1Prox(1.0), gen.A, gen.b);
  SaddlePoint z0;
  z0.x = Vector(26, 1.0);
  z0.lambda = Vector(20, 0.0);

  AdmmParams prm;
  SolveResult r = solveAdlpmm(sp, prm, z0);
  REQUIRE(r.status == SolveStatus::converged);
  CHECK(supportRecovered(splitPoint(sp, r.x_final).x, gen.x_true));

  // Restarting from the landed point stops immediately.
  SolveResult again = solveAdlpmm(sp, prm, splitPoint(sp, r.x_final));
  CHECK(again.status == SolveStatus::converged);
  CHECK(again.iterations() <= 1);
}

TEST_CASE("AD-LPMM and the saddle solvers land on the same primal point") {
  LassoInstance gen = generateLassoInstance(20, 26, 111);
  SaddleProblem sp = SaddleProblem::singleBlock(l1Prox(1.0), gen.A, gen.b);
  SaddlePoint z0;
  z0.x = Vector(26, 1.0);
  z0.lambda = Vector(20, 0.0);

  AdmmParams ap;
  ap.tol_succ = 1e-9;
  SolveResult lp = solveAdlpmm(sp, ap, z0);
  SolverParams prm;
  prm.tol_inf = 1e-9;
  SolveResult pc = solveSaddle(sp, SaddleMethod::gem, prm, z0);
  REQUIRE(lp.status == SolveStatus::converged);
  REQUIRE(pc.status == SolveStatus::converged);

  SaddlePoint a = splitPoint(sp, lp.x_final);
  SaddlePoint b = splitPoint(sp, pc.x_final);
  CHECK(normInf(subtract(a.x, b.x)) < 1e-5);
  // The ADMM-family multiplier carries the opposite sign from the lift.
  CHECK(normInf(add(a.lambda, b.lambda)) < 1e-4);
}

TEST_CASE("AD-LPMM validates the linearization constants") {
  LassoInstance gen = generateLassoInstance(10, 12, 113);
  SaddleProblem sp = SaddleProblem::singleBlock(l1Prox(1.0), gen.A, gen.b);
  SaddlePoint z0;
  z0.x = Vector(12, 1.0);
  z0.lambda = Vector(10, 0.0);
  AdmmParams prm;
  prm.alpha_lin = 1.0;  // far below ρ λ_max(A'A)
  CHECK_THROWS_AS(solveAdlpmm(sp, prm, z0), std::invalid_argument);
  prm = AdmmParams{};
  prm.rho = -1.0;
  CHECK_THROWS_AS(solveAdlpmm(sp, prm, z0), std::invalid_argument);
}

TEST_SUITE_END();
