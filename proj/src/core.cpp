#include "mgvi/core.hpp"

#include <algorithm>
#include <cmath>

namespace mgvi {

namespace {

void requireSameLength(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace

double dot(const Vector& a, const Vector& b) {
  requireSameLength(a, b, "dot");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normTwoSquared(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double normTwo(const Vector& a) { return std::sqrt(normTwoSquared(a)); }

double normInf(const Vector& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

Vector subtract(const Vector& a, const Vector& b) {
  requireSameLength(a, b, "subtract");
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector add(const Vector& a, const Vector& b) {
  requireSameLength(a, b, "add");
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector addScaled(const Vector& a, double s, const Vector& b) {
  requireSameLength(a, b, "addScaled");
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

Vector scale(double s, const Vector& a) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool allFinite(const Vector& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void requireFinite(const Vector& a, const char* what) {
  if (!allFinite(a)) {
    throw std::invalid_argument(std::string(what) +
                                ": non-finite entry (NaN or Inf)");
  }
}

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

DenseMatrix::DenseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(size_t(rows) * size_t(cols), 0.0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("DenseMatrix: negative dimension");
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("DenseMatrix: negative dimension");
  if (entries_.size() != size_t(rows) * size_t(cols)) {
    throw std::invalid_argument("DenseMatrix: entry count does not match rows*cols");
  }
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix T(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

double DenseMatrix::frobeniusNorm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::maxColumnNorm() const {
  std::vector<double> col(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = rowPtr(i);
    for (int j = 0; j < cols_; ++j) col[j] += row[j] * row[j];
  }
  double best = 0.0;
  for (double v : col) best = std::max(best, v);
  return std::sqrt(best);
}

double DenseMatrix::symmetryGap() const {
  if (rows_ != cols_) throw std::invalid_argument("symmetryGap: matrix not square");
  double gap = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      gap = std::max(gap, std::abs((*this)(i, j) - (*this)(j, i)));
  return gap;
}

Vector matVec(const DenseMatrix& M, const Vector& v) {
  if (size_t(M.cols()) != v.size()) {
    throw std::invalid_argument("matVec: M.cols != v.length (" +
                                std::to_string(M.cols()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
#ifndef NDEBUG
  requireFinite(v, "matVec input");
#endif
  Vector r(M.rows());
  for (int i = 0; i < M.rows(); ++i) {
    const double* row = M.rowPtr(i);
    double s = 0.0;
    for (int j = 0; j < M.cols(); ++j) s += row[j] * v[j];
    r[i] = s;
  }
  return r;
}

Vector matVecTranspose(const DenseMatrix& M, const Vector& v) {
  if (size_t(M.rows()) != v.size()) {
    throw std::invalid_argument("matVecTranspose: M.rows != v.length (" +
                                std::to_string(M.rows()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
#ifndef NDEBUG
  requireFinite(v, "matVecTranspose input");
#endif
  Vector r(M.cols(), 0.0);
  for (int i = 0; i < M.rows(); ++i) {
    const double* row = M.rowPtr(i);
    const double vi = v[i];
    for (int j = 0; j < M.cols(); ++j) r[j] += vi * row[j];
  }
  return r;
}

DenseMatrix gramMatrix(const DenseMatrix& A) {
  DenseMatrix C(A.cols(), A.cols());
  for (int k = 0; k < A.rows(); ++k) {
    const double* row = A.rowPtr(k);
    for (int i = 0; i < A.cols(); ++i) {
      const double aki = row[i];
      if (aki == 0.0) continue;
      double* ci = &C(i, 0);
      for (int j = 0; j < A.cols(); ++j) ci[j] += aki * row[j];
    }
  }
  return C;
}

SpectralEstimate spectralNormEstimate(const DenseMatrix& M, double tol,
                                      int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("spectralNormEstimate: tol must be > 0");
  if (M.rows() == 0 || M.cols() == 0) {
    throw std::invalid_argument("spectralNormEstimate: empty matrix");
  }

  SpectralEstimate est;
  const int n = M.cols();
  Vector v(n, 1.0 / std::sqrt(double(n)));
  double sigma = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = matVec(M, v);
    const double wn = normTwo(w);  // ‖Mv‖ = sqrt(vᵀMᵀMv) for unit v
    est.iterations = it;
    if (wn == 0.0) break;  // v in the null space; keep the best bound so far
    Vector u = matVecTranspose(M, w);
    const double un = normTwo(u);  // > 0 because uᵀv = ‖Mv‖² > 0
    for (int i = 0; i < n; ++i) v[i] = u[i] / un;
    if (std::abs(wn - sigma) <= tol * wn) {
      sigma = wn;
      est.converged = true;
      break;
    }
    sigma = wn;
  }
  // The power estimate and the largest column norm are both lower bounds on
  // the spectral norm; report the better one.
  est.value = std::max(sigma, M.maxColumnNorm());
  return est;
}

// ---------------------------------------------------------------------------
// MonotoneOperator
// ---------------------------------------------------------------------------

MonotoneOperator MonotoneOperator::general(
    std::function<Vector(const Vector&)> apply,
    std::optional<double> lipschitz_hint) {
  MonotoneOperator op;
  op.apply_ = std::move(apply);
  op.structure_ = GeneralStructure{};
  op.lipschitz_hint_ = lipschitz_hint;
  return op;
}

MonotoneOperator MonotoneOperator::affine(DenseMatrix M, Vector q) {
  if (M.rows() != M.cols()) throw std::invalid_argument("affine: M must be square");
  if (size_t(M.rows()) != q.size()) {
    throw std::invalid_argument("affine: q length must equal M dimension");
  }
  AffineStructure st;
  st.symmetric = (M.rows() == 0) || (M.symmetryGap() < 1e-10);
  st.M = std::make_shared<const DenseMatrix>(std::move(M));
  st.q = std::make_shared<const Vector>(std::move(q));
  MonotoneOperator op;
  op.apply_ = [st](const Vector& x) {
    Vector r = matVec(*st.M, x);
    for (size_t i = 0; i < r.size(); ++i) r[i] += (*st.q)[i];
    return r;
  };
  op.structure_ = st;
  return op;
}

MonotoneOperator MonotoneOperator::affineSymmetric(DenseMatrix A, Vector c) {
  if (A.rows() != A.cols() || A.symmetryGap() >= 1e-10) {
    throw std::invalid_argument("affineSymmetric: matrix is not symmetric");
  }
  MonotoneOperator op = affine(std::move(A), std::move(c));
  return op;
}

}  // namespace mgvi
