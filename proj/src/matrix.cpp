#include "hodgekit/matrix.hpp"

#include <algorithm>

namespace hodgekit {

bool is_zero(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_real(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j).im != 0) return false;
  return true;
}

Mat real_part(const Mat& m) {
  return m.unaryExpr([](const Scalar& s) { return Scalar(s.re); });
}

Mat imag_part(const Mat& m) {
  return m.unaryExpr([](const Scalar& s) { return Scalar(s.im); });
}

Mat column_echelon(const Mat& m) {
  Mat work = m;
  const Index rows = work.rows(), cols = work.cols();
  Index next = 0;  // next column to place a pivot in
  for (Index r = 0; r < rows && next < cols; ++r) {
    Index pivot = -1;
    for (Index j = next; j < cols; ++j)
      if (!work(r, j).is_zero()) { pivot = j; break; }
    if (pivot < 0) continue;
    work.col(next).swap(work.col(pivot));
    const Scalar inv = Scalar(1) / work(r, next);
    work.col(next) *= inv;
    for (Index j = 0; j < cols; ++j) {
      if (j == next || work(r, j).is_zero()) continue;
      work.col(j) -= work(r, j) * work.col(next);
    }
    ++next;
  }
  return work.leftCols(next);
}

Index rank(const Mat& m) { return column_echelon(m).cols(); }

Mat kernel(const Mat& m) {
  // Row-reduce m, then read the kernel off the free columns.
  Mat work = m;
  const Index rows = work.rows(), cols = work.cols();
  std::vector<Index> pivot_col;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pr = -1;
    for (Index i = r; i < rows; ++i)
      if (!work(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    work.row(r).swap(work.row(pr));
    const Scalar inv = Scalar(1) / work(r, c);
    work.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || work(i, c).is_zero()) continue;
      work.row(i) -= work(i, c) * work.row(r);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  Mat basis = Mat::Zero(cols, cols - static_cast<Index>(pivot_col.size()));
  Index out = 0;
  for (Index c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    basis(c, out) = Scalar(1);
    for (Index i = 0; i < static_cast<Index>(pivot_col.size()); ++i)
      basis(pivot_col[static_cast<std::size_t>(i)], out) = -work(i, c);
    ++out;
  }
  return column_echelon(basis);
}

namespace {

// Row-reduce [A | B] in place; returns pivot columns of the A-part.
std::vector<Index> row_reduce_augmented(Mat& aug, Index a_cols) {
  const Index rows = aug.rows();
  std::vector<Index> pivot_col;
  Index r = 0;
  for (Index c = 0; c < a_cols && r < rows; ++c) {
    Index pr = -1;
    for (Index i = r; i < rows; ++i)
      if (!aug(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    aug.row(r).swap(aug.row(pr));
    const Scalar inv = Scalar(1) / aug(r, c);
    aug.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || aug(i, c).is_zero()) continue;
      aug.row(i) -= aug(i, c) * aug.row(r);
    }
    pivot_col.push_back(c);
    ++r;
  }
  return pivot_col;
}

}  // namespace

std::optional<Mat> solve_matrix(const Mat& A, const Mat& B) {
  if (A.rows() != B.rows()) throw PreconditionError("solve: row count mismatch");
  Mat aug(A.rows(), A.cols() + B.cols());
  aug << A, B;
  const std::vector<Index> pivots = row_reduce_augmented(aug, A.cols());
  const Index r = static_cast<Index>(pivots.size());
  // Inconsistent iff some row is zero on the A-part but nonzero on the B-part.
  for (Index i = r; i < aug.rows(); ++i)
    for (Index j = 0; j < B.cols(); ++j)
      if (!aug(i, A.cols() + j).is_zero()) return std::nullopt;
  Mat x = Mat::Zero(A.cols(), B.cols());
  for (Index k = 0; k < r; ++k) x.row(pivots[static_cast<std::size_t>(k)]) = aug.block(k, A.cols(), 1, B.cols());
  return x;
}

std::optional<Vec> solve(const Mat& A, const Vec& b) {
  auto x = solve_matrix(A, Mat(b));
  if (!x) return std::nullopt;
  return Vec(x->col(0));
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse: matrix not square");
  auto x = solve_matrix(m, Mat(Mat::Identity(m.rows(), m.rows())));
  if (!x || rank(m) != m.rows()) return std::nullopt;
  return x;
}

Scalar determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant: matrix not square");
  Mat work = m;
  const Index n = work.rows();
  Scalar det(1);
  for (Index c = 0; c < n; ++c) {
    Index pr = -1;
    for (Index i = c; i < n; ++i)
      if (!work(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) return Scalar(0);
    if (pr != c) {
      work.row(c).swap(work.row(pr));
      det = -det;
    }
    det *= work(c, c);
    const Scalar inv = Scalar(1) / work(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (work(i, c).is_zero()) continue;
      work.row(i) -= work(i, c) * inv * work.row(c);
    }
  }
  return det;
}

bool is_positive_definite_hermitian(const Mat& g) {
  if (g.rows() != g.cols()) throw PreconditionError("positivity: matrix not square");
  const Mat gt = conjugate(Mat(g.transpose()));
  if (!(is_zero(Mat(g - gt)))) return false;
  for (Index k = 1; k <= g.rows(); ++k) {
    const Scalar minor = determinant(g.topLeftCorner(k, k));
    if (minor.im != 0 || minor.re <= 0) return false;
  }
  return true;
}

Mat matrix_power(const Mat& m, int k) {
  if (m.rows() != m.cols()) throw PreconditionError("matrix_power: matrix not square");
  if (k < 0) throw PreconditionError("matrix_power: negative exponent");
  Mat out = Mat::Identity(m.rows(), m.rows());
  for (int j = 0; j < k; ++j) out = out * m;
  return out;
}

Mat nilpotent_exp(const Mat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("nilpotent_exp: matrix not square");
  const Index n = m.rows();
  Mat sum = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    term = Mat(term * m) * Scalar(Rational(1, k));
    if (is_zero(term)) return sum;
    sum += term;
  }
  throw PreconditionError("nilpotent_exp: matrix is not nilpotent");
}

}  // namespace hodgekit
