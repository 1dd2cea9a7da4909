// Shared test helpers: deterministic random rationals and nilpotent
// matrices, and an independent Jordan-basis construction of the weight
// filtration used as an oracle against the production algorithm.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hodgekit/limit_period.hpp"
#include "hodgekit/matrix.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/polynomial.hpp"
#include "hodgekit/subspace.hpp"

namespace hodgekit::testsupport {

inline Rational random_rational(std::mt19937& rng, int max_num = 4, int max_den = 3) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

// A random nilpotent matrix: strictly upper triangular small integers,
// conjugated by a product of random shears (exactly invertible).
inline Mat random_nilpotent(std::mt19937& rng, Index dim) {
  Mat t = Mat::Zero(dim, dim);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) t(i, j) = Scalar(entry(rng));
  Mat u = Mat::Identity(dim, dim);
  if (dim > 1) {
    std::uniform_int_distribution<Index> pos(0, dim - 1);
    std::uniform_int_distribution<int> unit(0, 1);
    for (Index s = 0; s < 2 * dim; ++s) {
      const Index i = pos(rng);
      const Index j = pos(rng);
      if (i == j) continue;
      Mat shear = Mat::Identity(dim, dim);
      shear(i, j) = Scalar(unit(rng) == 0 ? -1 : 1);
      u = Mat(u * shear);
    }
  }
  const auto uinv = inverse(u);
  if (!uinv) throw std::logic_error("shear product must be invertible");
  return Mat(*uinv * t * u);
}

// Weight filtration assembled from an explicit Jordan basis: a chain of
// length j contributes one vector of each weight j-1, j-3, ..., -(j-1),
// and W_k is spanned by the chain vectors of weight at most k.
inline WeightFiltration jordan_weight_filtration(const Mat& n, int center) {
  const Index d = n.rows();
  if (d == 0) return WeightFiltration(center, {{center, Subspace::full(0)}});

  std::vector<Mat> pw{Mat(Mat::Identity(d, d))};
  std::vector<Subspace> ker_pow{Subspace::zero(d)};
  int index = 0;
  while (ker_pow.back().dim() < d) {
    pw.push_back(Mat(pw.back() * n));
    ker_pow.push_back(Subspace::span(kernel(pw.back())));
    ++index;
    if (index > d) throw std::logic_error("oracle needs a nilpotent matrix");
  }

  // Chain tops, tallest chains first: at height j extend ker N^{j-1} plus
  // the height-j members of taller chains to all of ker N^j.
  std::vector<std::vector<Vec>> tops(static_cast<std::size_t>(index) + 1);
  for (int j = index; j >= 1; --j) {
    Subspace have = ker_pow[static_cast<std::size_t>(j - 1)];
    for (int l = j + 1; l <= index; ++l)
      for (const Vec& t : tops[static_cast<std::size_t>(l)])
        have = join(have, Subspace::span(Mat(pw[static_cast<std::size_t>(l - j)] * t)));
    const Mat cand = ker_pow[static_cast<std::size_t>(j)].basis();
    for (Index c = 0; c < cand.cols(); ++c) {
      const Vec v = cand.col(c);
      if (have.contains(v)) continue;
      tops[static_cast<std::size_t>(j)].push_back(v);
      have = join(have, Subspace::span(Mat(v)));
    }
  }

  std::vector<std::pair<int, Vec>> weighted;
  for (int j = 1; j <= index; ++j)
    for (const Vec& t : tops[static_cast<std::size_t>(j)])
      for (int a = 0; a < j; ++a)
        weighted.emplace_back(j - 1 - 2 * a, Vec(pw[static_cast<std::size_t>(a)] * t));
  if (static_cast<Index>(weighted.size()) != d)
    throw std::logic_error("oracle chains do not form a basis");

  std::map<int, Subspace> steps;
  for (int k = -(index - 1); k <= index - 1; ++k) {
    std::vector<Vec> below;
    for (const auto& [weight, v] : weighted)
      if (weight <= k) below.push_back(v);
    Mat basis(d, static_cast<Index>(below.size()));
    for (Index c = 0; c < basis.cols(); ++c) basis.col(c) = below[static_cast<std::size_t>(c)];
    steps.emplace(center + k, Subspace::span(basis));
  }
  return WeightFiltration(center, steps);
}

// All r-element subsets of {0, ..., n-1}, lexicographic.
inline std::vector<std::vector<Index>> index_subsets(Index n, Index r) {
  std::vector<std::vector<Index>> out;
  if (r < 0 || r > n) return out;
  std::vector<Index> cur(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    Index k = r - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n - r + k) --k;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (Index i = k + 1; i < r; ++i)
      cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

// Determinant of a square matrix of polynomials by Laplace expansion.
inline Poly poly_determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(Scalar(1));
  if (n == 1) return m[0][0];
  Poly det;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t a = 0; a < n; ++a) {
      if (a == i) continue;
      std::vector<Poly> row(m[a].begin() + 1, m[a].end());
      minor.push_back(std::move(row));
    }
    Poly term = m[i][0] * poly_determinant(minor);
    det = (i % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// Independent limit computation through Pluecker coordinates: the top-degree
// coefficients of the maximal minors give the decomposable multivector of the
// limit plane; the plane is recovered as {v : v wedge omega = 0}.
inline Subspace plucker_limit(const PolynomialFrame& frame) {
  const Index n = frame.rows(), r = frame.cols();
  if (r == 0) return Subspace::zero(n);

  auto entry = [&](Index i, Index j) {
    std::vector<Scalar> c;
    for (const Mat& m : frame.coeff) c.push_back(m(i, j));
    return Poly(std::move(c));
  };

  const auto rows_sets = index_subsets(n, r);
  std::map<std::vector<Index>, Poly> minors;
  int top = -1;
  for (const auto& s : rows_sets) {
    std::vector<std::vector<Poly>> sub;
    for (Index i : s) {
      std::vector<Poly> row;
      for (Index j = 0; j < r; ++j) row.push_back(entry(i, j));
      sub.push_back(std::move(row));
    }
    Poly det = poly_determinant(sub);
    top = std::max(top, det.degree());
    minors.emplace(s, std::move(det));
  }
  if (top < 0) throw std::logic_error("plucker oracle: frame has rank below its column count");
  std::map<std::vector<Index>, Scalar> omega;
  for (const auto& [s, det] : minors) omega.emplace(s, det.coeff(top));

  // v in the plane iff for every (r+1)-subset T the contraction of v with
  // omega over T vanishes.
  const auto ext = index_subsets(n, r + 1);
  Mat cond(static_cast<Index>(ext.size()), n);
  cond.setZero();
  for (std::size_t t = 0; t < ext.size(); ++t) {
    for (std::size_t k = 0; k < ext[t].size(); ++k) {
      std::vector<Index> rest;
      for (std::size_t a = 0; a < ext[t].size(); ++a)
        if (a != k) rest.push_back(ext[t][a]);
      const Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
      cond(static_cast<Index>(t), ext[t][k]) += sign * omega.at(rest);
    }
  }
  const Subspace plane = Subspace::span(kernel(cond));
  if (plane.dim() != r) throw std::logic_error("plucker oracle: limit is not a plane");
  return plane;
}

}  // namespace hodgekit::testsupport
