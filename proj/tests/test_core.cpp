#include <doctest.h>

#include "test_util.hpp"

using namespace mgvi;
using testutil::randomMatrix;
using testutil::randomVector;

TEST_SUITE_BEGIN("core");

TEST_CASE("matVec basics") {
  CHECK(matVec(DenseMatrix::identity(3), {1, 2, 3}) == Vector{1, 2, 3});
  CHECK(matVec(DenseMatrix(2, 2), {5, 7}) == Vector{0, 0});
  CHECK(matVec(DenseMatrix(2, 2, {1, 2, 3, 4}), {1, 1}) == Vector{3, 7});
  CHECK_THROWS_AS(matVec(DenseMatrix(2, 3), {1, 1}), std::invalid_argument);
}

TEST_CASE("matVecTranspose basics") {
  CHECK(matVecTranspose(DenseMatrix::identity(3), {1, 2, 3}) == Vector{1, 2, 3});
  CHECK(matVecTranspose(DenseMatrix(2, 2, {1, 2, 3, 4}), {1, 1}) == Vector{4, 6});
  Rng rng(3);
  DenseMatrix M = randomMatrix(rng, 4, 6);
  CHECK(matVecTranspose(M, Vector(4, 0.0)) == Vector(6, 0.0));
  CHECK_THROWS_AS(matVecTranspose(DenseMatrix(2, 3), {1, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("matVec is linear") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix M = randomMatrix(rng, 7, 5);
    Vector u = randomVector(rng, 5), v = randomVector(rng, 5);
    const double a = rng.nextNormal(), b = rng.nextNormal();
    Vector combo(5);
    for (int i = 0; i < 5; ++i) combo[i] = a * u[i] + b * v[i];
    Vector lhs = matVec(M, combo);
    Vector mu = matVec(M, u), mv = matVec(M, v);
    for (int i = 0; i < 7; ++i) {
      const double rhs = a * mu[i] + b * mv[i];
      CHECK(std::abs(lhs[i] - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("adjoint identity <Mu, w> = <u, M'w>") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix M = randomMatrix(rng, 6, 4);
    Vector u = randomVector(rng, 4), w = randomVector(rng, 6);
    const double lhs = dot(matVec(M, u), w);
    const double rhs = dot(u, matVecTranspose(M, w));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("gramMatrix is exactly symmetric and equals A'A") {
  Rng rng(13);
  DenseMatrix A = randomMatrix(rng, 9, 6);
  DenseMatrix G = gramMatrix(A);
  CHECK(G.symmetryGap() == 0.0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      double want = 0.0;
      for (int k = 0; k < 9; ++k) want += A(k, i) * A(k, j);
      CHECK(std::abs(G(i, j) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("spectralNormEstimate on known matrices") {
  CHECK(spectralNormEstimate(DenseMatrix::identity(4)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spectralNormEstimate(DenseMatrix(2, 2, {3, 0, 0, 1})).value ==
        doctest::Approx(3.0).epsilon(1e-9));
  // Nilpotent shift: singular values {1, 0}.
  CHECK(spectralNormEstimate(DenseMatrix(2, 2, {0, 1, 0, 0})).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(spectralNormEstimate(DenseMatrix()), std::invalid_argument);
}

TEST_CASE("spectral estimate bounded by Frobenius and max column norm") {
  Rng rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    DenseMatrix M = randomMatrix(rng, 5 + trial % 4, 3 + trial % 5);
    SpectralEstimate est = spectralNormEstimate(M);
    CHECK(est.value <= M.frobeniusNorm() * (1 + 1e-12));
    CHECK(est.value >= M.maxColumnNorm() * (1 - 1e-12));
  }
}

TEST_CASE("affine operator applies Mx + q and detects symmetry") {
  MonotoneOperator f =
      MonotoneOperator::affine(DenseMatrix(2, 2, {1, 2, 3, 4}), Vector{1, -1});
  CHECK(f(Vector{1, 1}) == Vector{4, 6});
  REQUIRE(f.affine() != nullptr);
  CHECK_FALSE(f.affine()->symmetric);

  MonotoneOperator g =
      MonotoneOperator::affine(DenseMatrix(2, 2, {2, 1, 1, 2}), Vector{0, 0});
  CHECK(g.affine()->symmetric);
  CHECK_THROWS_AS(MonotoneOperator::affineSymmetric(DenseMatrix(2, 2, {1, 2, 3, 4}),
                                                    Vector{0, 0}),
                  std::invalid_argument);
}

TEST_CASE("monotonicity of a gram-affine operator on sampled pairs") {
  Rng rng(15);
  DenseMatrix A = randomMatrix(rng, 8, 5);
  MonotoneOperator f = MonotoneOperator::affine(gramMatrix(A), randomVector(rng, 5));
  for (int trial = 0; trial < 50; ++trial) {
    Vector u = randomVector(rng, 5), v = randomVector(rng, 5);
    Vector du = subtract(u, v);
    const double inner = dot(subtract(f(u), f(v)), du);
    CHECK(inner >= -1e-10 * normTwoSquared(du));
  }
}

TEST_CASE("lipschitz hint is honored by the 1-d oracle operator") {
  MgviProblem p = testutil::oneDimOracle();
  Rng rng(16);
  const double L = 1.0;  // F(x) = x - 3
  for (int trial = 0; trial < 30; ++trial) {
    Vector u = randomVector(rng, 1, 10.0), v = randomVector(rng, 1, 10.0);
    const double lhs = normTwo(subtract(p.f(u), p.f(v)));
    CHECK(lhs <= L * normTwo(subtract(u, v)) * (1 + 1e-12));
  }
}

TEST_CASE("finite validation") {
  CHECK(allFinite(Vector{1.0, -2.0}));
  CHECK_FALSE(allFinite(Vector{1.0, std::nan("")}));
  CHECK_THROWS_AS(requireFinite(Vector{std::numeric_limits<double>::infinity()}, "x"),
                  std::invalid_argument);
}

TEST_CASE("DenseMatrix shape errors") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(DenseMatrix(2, 3).symmetryGap(), std::invalid_argument);
}

TEST_SUITE_END();
