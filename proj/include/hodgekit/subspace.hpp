// Subspaces of Q(i)^n with a canonical basis, and the lattice operations on
// them (sum, intersection, preimage, quotient).
//
// A Subspace stores the canonical reduced column echelon basis of its span,
// so equality of subspaces is equality of representations (O(1) after
// construction) and every operation is deterministic.
#pragma once

#include <initializer_list>

#include "hodgekit/matrix.hpp"

namespace hodgekit {

class Subspace {
 public:
  // The zero subspace of Q(i)^n.
  static Subspace zero(Index ambient);
  // All of Q(i)^n.
  static Subspace full(Index ambient);
  // Span of the columns of m inside Q(i)^{m.rows()}.
  static Subspace span(const Mat& m);
  static Subspace span_of(Index ambient, std::initializer_list<Vec> vectors);

  Index ambient() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  // Canonical basis, one column per dimension (n x dim; dim may be 0).
  const Mat& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Subspace(Index ambient, Mat canonical_basis);
  Index ambient_;
  Mat basis_;
};

// Sum a + b.
Subspace join(const Subspace& a, const Subspace& b);

// Intersection a ∩ b.
Subspace meet(const Subspace& a, const Subspace& b);

// Image { f v : v in s } under the linear map with matrix f (rows x ambient).
Subspace image(const Mat& f, const Subspace& s);

// Preimage { v : f v in t } of t under f.
Subspace preimage(const Mat& f, const Subspace& t);

// Entrywise conjugate subspace (span of the conjugated basis).
Subspace conjugate(const Subspace& s);

// The quotient inside/sub as a projection/section pair.
//
// Requires sub ⊆ inside. `projection` has shape (dim inside - dim sub) x
// ambient, annihilates sub, and restricts to a surjection inside ->
// Q(i)^{dim inside - dim sub}; `section` (ambient x quotient dim) is the
// deterministically chosen complement basis of sub inside `inside`, so
// projection * section = identity. Maps descending to the quotient are
// induced as projection_target * f * section_source.
struct QuotientMap {
  Mat projection;
  Mat section;
};
QuotientMap quotient_map(const Subspace& sub, const Subspace& inside);

// Just the projection part of quotient_map. With sub = 0 the composite
// P * inside.basis() is the identity.
Mat quotient_matrix(const Subspace& sub, const Subspace& inside);

}  // namespace hodgekit
