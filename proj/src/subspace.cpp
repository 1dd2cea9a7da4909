#include "hodgekit/subspace.hpp"

#include <utility>

#include "hodgekit/error.hpp"

namespace hodgekit {

Subspace::Subspace(Index ambient, Mat canonical_basis)
    : ambient_(ambient), basis_(std::move(canonical_basis)) {}

Subspace Subspace::zero(Index ambient) {
  require(ambient >= 0, "subspace: ambient dimension must be nonnegative");
  return Subspace(ambient, Mat(ambient, 0));
}

Subspace Subspace::full(Index ambient) {
  require(ambient >= 0, "subspace: ambient dimension must be nonnegative");
  return Subspace(ambient, Mat::Identity(ambient, ambient));
}

Subspace Subspace::span(const Mat& m) { return Subspace(m.rows(), column_echelon(m)); }

Subspace Subspace::span_of(Index ambient, std::initializer_list<Vec> vectors) {
  Mat m(ambient, static_cast<Index>(vectors.size()));
  Index j = 0;
  for (const Vec& v : vectors) {
    require(v.size() == ambient, "subspace: vector size does not match ambient dimension");
    m.col(j++) = v;
  }
  return span(m);
}

bool Subspace::contains(const Vec& v) const {
  require(v.size() == ambient_, "subspace: vector size does not match ambient dimension");
  return solve(basis_, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  require(other.ambient_ == ambient_, "subspace: ambient dimensions differ");
  return solve_matrix(basis_, other.basis_).has_value();
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_ || a.basis_.cols() != b.basis_.cols()) return false;
  return is_zero(Mat(a.basis_ - b.basis_));
}

Subspace join(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "join: ambient dimensions differ");
  Mat m(a.ambient(), a.dim() + b.dim());
  m << a.basis(), b.basis();
  return Subspace::span(m);
}

Subspace meet(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "meet: ambient dimensions differ");
  // (u, w) with A u = B w; the intersection is A applied to the u-part.
  Mat stacked(a.ambient(), a.dim() + b.dim());
  stacked << a.basis(), -b.basis();
  const Mat ker = kernel(stacked);
  return Subspace::span(a.basis() * ker.topRows(a.dim()));
}

Subspace image(const Mat& f, const Subspace& s) {
  require(f.cols() == s.ambient(), "image: map domain does not match ambient dimension");
  return Subspace::span(f * s.basis());
}

Subspace preimage(const Mat& f, const Subspace& t) {
  require(f.rows() == t.ambient(), "preimage: map codomain does not match ambient dimension");
  // v with f v = T w for some w: kernel of [f | -T], projected to the v-part.
  Mat stacked(f.rows(), f.cols() + t.dim());
  stacked << f, -t.basis();
  const Mat ker = kernel(stacked);
  return Subspace::span(ker.topRows(f.cols()));
}

Subspace conjugate(const Subspace& s) { return Subspace::span(conjugate(s.basis())); }

QuotientMap quotient_map(const Subspace& sub, const Subspace& inside) {
  require(sub.ambient() == inside.ambient(), "quotient: ambient dimensions differ");
  require(inside.contains(sub), "quotient: subspace is not contained in the larger space");
  const Index n = sub.ambient();
  // Extend sub's basis to a basis of `inside` using inside's own columns, then
  // to a basis of the whole space using standard basis vectors; the greedy
  // choices make the result deterministic.
  Mat frame(n, n);
  Index used = sub.dim();
  frame.leftCols(used) = sub.basis();
  const Index quotient_dim = inside.dim() - sub.dim();
  auto try_extend = [&](const Vec& v) {
    frame.col(used) = v;
    if (rank(frame.leftCols(used + 1)) == used + 1) ++used;
  };
  for (Index j = 0; j < inside.dim() && used < sub.dim() + quotient_dim; ++j)
    try_extend(inside.basis().col(j));
  for (Index j = 0; j < n && used < n; ++j) try_extend(Vec::Unit(n, j));
  const auto inv = inverse(frame);
  if (!inv) throw InternalError("quotient: extended frame is singular");
  return {inv->middleRows(sub.dim(), quotient_dim), frame.middleCols(sub.dim(), quotient_dim)};
}

Mat quotient_matrix(const Subspace& sub, const Subspace& inside) {
  return quotient_map(sub, inside).projection;
}

}  // namespace hodgekit
