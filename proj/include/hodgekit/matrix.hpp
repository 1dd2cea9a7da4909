// Dense exact matrices over Q(i) and the elimination routines the rest of
// the library is built on.
//
// Provides:
//  - Mat / Vec: Eigen dynamic matrices templated on hodgekit::Scalar
//  - conjugate, entrywise real/imaginary helpers
//  - canonical reduced column echelon form (unique basis per column span)
//  - rank / kernel / image membership / exact linear solves / inverse
//  - exact determinant and Hermitian positive-definiteness tests
//
// Eigen supplies storage and expression arithmetic only; every pivoting
// algorithm here is hand-written exact Gaussian elimination (Eigen's own
// decompositions assume ordered scalars with absolute values, which Q(i)
// does not have). NumTraits marks the scalar IsComplex = 0 so Eigen never
// conjugates implicitly; conjugation is always explicit via conjugate().
#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "hodgekit/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<hodgekit::Scalar> {
  using Real = hodgekit::Scalar;
  using NonInteger = hodgekit::Scalar;
  using Literal = hodgekit::Scalar;
  using Nested = hodgekit::Scalar;
  enum {
    IsComplex = 0,  // opaque exact field; conjugation is explicit in hodgekit
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120,
  };
  static inline Real epsilon() { return hodgekit::Scalar(0); }
  static inline Real dummy_precision() { return hodgekit::Scalar(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace hodgekit {

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline Mat conjugate(const Mat& m) {
  return m.unaryExpr([](const Scalar& s) { return conj(s); });
}
inline Vec conjugate(const Vec& v) {
  return v.unaryExpr([](const Scalar& s) { return conj(s); });
}

bool is_zero(const Mat& m);
bool is_real(const Mat& m);

// Entrywise real / imaginary parts (as Q(i)-matrices with zero imaginary part).
Mat real_part(const Mat& m);
Mat imag_part(const Mat& m);

// Canonical reduced column echelon form of the column span of m:
// zero columns dropped, pivot rows strictly increasing across columns,
// each pivot entry 1 and the unique nonzero of its row. Two matrices have
// the same column span iff their canonical forms are identical, which makes
// subspace equality a bitwise comparison.
Mat column_echelon(const Mat& m);

Index rank(const Mat& m);

// Canonical basis of the right kernel {x : m x = 0} (n x k, possibly k = 0).
Mat kernel(const Mat& m);

// One exact solution of A x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& A, const Vec& b);

// Columnwise solve: X with A X = B, or nullopt when any column is inconsistent.
std::optional<Mat> solve_matrix(const Mat& A, const Mat& B);

// Exact inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

// Exact determinant via Gaussian elimination with row pivoting.
Scalar determinant(const Mat& m);

// True iff g is Hermitian (g = conjugate-transpose of g) with every leading
// principal minor a positive rational (Sylvester's criterion; exact).
bool is_positive_definite_hermitian(const Mat& g);

// Matrix power with N^0 = identity.
Mat matrix_power(const Mat& m, int k);

// Exact exp of a nilpotent matrix: the series Σ m^k / k! terminates.
// Throws PreconditionError when m is not nilpotent.
Mat nilpotent_exp(const Mat& m);

}  // namespace hodgekit
