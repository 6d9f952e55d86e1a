#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mgvi {

/// All iterates, operator values, and instance data are dense 64-bit vectors.
using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Vector helpers
//
// Dot products and norms accumulate strictly left to right so that repeated
// runs are bit-identical regardless of thread schedules elsewhere.
// ---------------------------------------------------------------------------

double dot(const Vector& a, const Vector& b);
double normTwoSquared(const Vector& a);
double normTwo(const Vector& a);
double normInf(const Vector& a);

/// a - b
Vector subtract(const Vector& a, const Vector& b);
/// a + b
Vector add(const Vector& a, const Vector& b);
/// a + s*b
Vector addScaled(const Vector& a, double s, const Vector& b);
Vector scale(double s, const Vector& a);

bool allFinite(const Vector& a);
/// Throws std::invalid_argument when `a` contains NaN or Inf.
void requireFinite(const Vector& a, const char* what);

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix. Immutable in spirit: every solver treats problem
/// matrices as read-only shared data.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);
  DenseMatrix(int rows, int cols, std::vector<double> entries);

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(int i, int j) const { return entries_[size_t(i) * cols_ + j]; }
  double& operator()(int i, int j) { return entries_[size_t(i) * cols_ + j]; }

  const double* rowPtr(int i) const { return entries_.data() + size_t(i) * cols_; }
  const std::vector<double>& entries() const { return entries_; }

  DenseMatrix transposed() const;
  double frobeniusNorm() const;
  double maxColumnNorm() const;
  /// max_{i,j} |M(i,j) - M(j,i)|; requires a square matrix.
  double symmetryGap() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

/// M * v. Each output entry is a left-to-right dot product over a row.
Vector matVec(const DenseMatrix& M, const Vector& v);

/// Mᵀ * v without materializing the transpose. Accumulates row by row so the
/// result is deterministic.
Vector matVecTranspose(const DenseMatrix& M, const Vector& v);

/// C = Aᵀ * A, accumulated row by row of A (exactly symmetric in floating
/// point because C(i,j) and C(j,i) sum identical products in the same order).
DenseMatrix gramMatrix(const DenseMatrix& A);

struct SpectralEstimate {
  double value = 0.0;  ///< estimate of the largest singular value of M
  bool converged = false;
  int iterations = 0;
};

/// Power iteration on MᵀM from the normalized all-ones vector. Returns a
/// lower bound on the spectral norm that is within `tol` (relative) of it on
/// convergence; `converged` is false when max_iter was exhausted. The
/// estimate never drops below the largest column 2-norm.
SpectralEstimate spectralNormEstimate(const DenseMatrix& M, double tol = 1e-10,
                                      int max_iter = 1000);

// ---------------------------------------------------------------------------
// Problem abstractions
// ---------------------------------------------------------------------------

/// A closed proper convex function θ exposed through its proximity operator
/// prox(v, β) = Prox_{βθ}(v), and optionally through its value.
struct ProxFunction {
  std::function<Vector(const Vector&, double)> prox;
  /// θ(x) as an extended real; empty when not available.
  std::function<double(const Vector&)> value;
};

/// F(x) = M x + q. M need not be symmetric; `symmetric` records whether it is
/// (within a 1e-10 entrywise gap) so the symmetric-only solvers can check
/// applicability cheaply.
struct AffineStructure {
  std::shared_ptr<const DenseMatrix> M;
  std::shared_ptr<const Vector> q;
  bool symmetric = false;
};

/// The skew block operator of a lifted two-block saddle problem:
///   F(x, y, λ) = (-Aᵀλ, -Bᵀλ, Ax + By - c).
/// A or B may be empty (zero-width block).
struct SaddleStructure {
  std::shared_ptr<const DenseMatrix> A;
  std::shared_ptr<const DenseMatrix> B;
  std::shared_ptr<const Vector> c;
  int n = 0;  ///< x-block length (= A.cols)
  int q = 0;  ///< y-block length (= B.cols)
  int m = 0;  ///< λ-block length (= c.length)
};

struct GeneralStructure {};

/// A monotone mapping F with optional structure tags. `apply` is always
/// callable; the structure lets solvers exploit affine or saddle form.
class MonotoneOperator {
 public:
  using Structure =
      std::variant<GeneralStructure, AffineStructure, SaddleStructure>;

  static MonotoneOperator general(std::function<Vector(const Vector&)> apply,
                                  std::optional<double> lipschitz_hint = {});
  /// F(x) = Mx + q.
  static MonotoneOperator affine(DenseMatrix M, Vector q);
  /// F(x) = Ax + c with A symmetric; throws when the symmetry gap exceeds
  /// 1e-10.
  static MonotoneOperator affineSymmetric(DenseMatrix A, Vector c);
  static MonotoneOperator saddle(std::shared_ptr<const DenseMatrix> A,
                                 std::shared_ptr<const DenseMatrix> B,
                                 std::shared_ptr<const Vector> c,
                                 int lanes = 1);

  Vector operator()(const Vector& x) const { return apply_(x); }

  const AffineStructure* affine() const {
    return std::get_if<AffineStructure>(&structure_);
  }
  const SaddleStructure* saddle() const {
    return std::get_if<SaddleStructure>(&structure_);
  }
  std::optional<double> lipschitzHint() const { return lipschitz_hint_; }

 private:
  std::function<Vector(const Vector&)> apply_;
  Structure structure_;
  std::optional<double> lipschitz_hint_;
};

/// The problem MGVI(θ, F): find x* with θ(x) - θ(x*) + (x - x*)ᵀF(x*) ≥ 0
/// for all x. The solution set is assumed nonempty.
struct MgviProblem {
  ProxFunction theta;
  MonotoneOperator f;
  int dim = 0;
};

}  // namespace mgvi
