#include "hodgekit/examples.hpp"

#include <map>
#include <utility>
#include <vector>

#include "hodgekit/error.hpp"
#include "hodgekit/limit_period.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/subspace.hpp"

namespace hodgekit {

namespace {

Mat standard_symplectic(Index g) {
  Mat j = Mat::Zero(2 * g, 2 * g);
  for (Index k = 0; k < g; ++k) {
    j(k, g + k) = Scalar(-1);
    j(g + k, k) = Scalar(1);
  }
  return j;
}

// The vanishing-cycle generator for δ_i: γ_i ↦ δ_i, everything else to zero.
Mat cycle_generator(Index g, Index i) {
  Mat n = Mat::Zero(2 * g, 2 * g);
  n(i, g + i) = Scalar(1);
  return n;
}

// F¹ as the column span of [Ω ; I].
HodgeFiltration graph_filtration(const Mat& omega) {
  const Index g = omega.rows();
  Mat basis = Mat::Zero(2 * g, g);
  basis.topRows(g) = omega;
  for (Index k = 0; k < g; ++k) basis(g + k, k) = Scalar(1);
  return HodgeFiltration({{1, Subspace::span(basis)}});
}

// Recovers Ω from a weight-one filtration with invertible γ-block; the
// normalized frame is basis · (γ-block)⁻¹.
Mat period_matrix(const Subspace& f1) {
  const Index n = f1.ambient();
  require(n % 2 == 0 && f1.dim() == n / 2,
          "fixture orbit: F^1 must be half-dimensional");
  const Index g = n / 2;
  const Mat basis = f1.basis();
  const Mat gamma_block = basis.bottomRows(g);
  const auto normalizer = solve_matrix(gamma_block, Mat(Mat::Identity(g, g)));
  require(normalizer.has_value(),
          "fixture orbit: F^1 is not a graph over the γ coordinates");
  return Mat(basis.topRows(g) * *normalizer);
}

Vec vec_of(const Mat& m) {
  Vec v(m.rows() * m.cols());
  Index pos = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) v(pos++) = m(i, j);
  return v;
}

}  // namespace

NilpotentOrbitData genus3_orbit(const Genus3Params& p) {
  require(p.c.im > 0,
          "genus-3 fixture: the elliptic period must lie in the upper half plane");
  Mat omega(3, 3);
  omega << p.a11, p.a12, p.b1,
           p.a12, p.a22, p.b2,
           p.b1, p.b2, p.c;
  return nilpotent_orbit_data(graph_filtration(omega),
                              {cycle_generator(3, 0), cycle_generator(3, 1)}, 1,
                              PolarizationForm(standard_symplectic(3), 1));
}

Genus3ExtensionData genus3_extension_data(const NilpotentOrbitData& orbit) {
  require(is_zero(Mat(orbit.q.matrix - standard_symplectic(3))),
          "genus-3 fixture: expected the standard symplectic polarization");
  require(orbit.center == 1, "genus-3 fixture: expected a weight-one orbit");
  require(orbit.generators.size() == 2 &&
              is_zero(Mat(orbit.generators[0].matrix - cycle_generator(3, 0))) &&
              is_zero(Mat(orbit.generators[1].matrix - cycle_generator(3, 1))),
          "genus-3 fixture: expected the two node generators");
  const Mat omega = period_matrix(orbit.f.at(1));
  require(is_zero(Mat(omega - omega.transpose())),
          "genus-3 fixture: the period matrix must be symmetric");
  require(omega(2, 2).im > 0,
          "genus-3 fixture: the elliptic period must lie in the upper half plane");
  Genus3ExtensionData data;
  data.c = omega(2, 2);
  data.b1 = omega(0, 2);
  data.b2 = omega(1, 2);
  data.a12 = omega(0, 1);
  data.a11 = omega(0, 0);
  data.a22 = omega(1, 1);
  return data;
}

Genus2Fixture genus2_orbit(Genus2Case which) {
  Mat omega = Mat::Zero(2, 2);
  omega(0, 0) = Scalar::i();
  omega(1, 1) = Scalar::i();
  std::vector<Mat> cone{cycle_generator(2, 0), cycle_generator(2, 1)};
  Mat pattern = Mat::Zero(2, 2);
  if (which == Genus2Case::i) {
    pattern(0, 1) = Scalar(1);
    pattern(1, 0) = Scalar(1);
  } else {
    // The third vanishing cycle δ1 + δ2: both γ's map to it.
    Mat joint = Mat::Zero(4, 4);
    joint(0, 2) = Scalar(1);
    joint(1, 2) = Scalar(1);
    joint(0, 3) = Scalar(1);
    joint(1, 3) = Scalar(1);
    cone.push_back(joint);
  }
  return Genus2Fixture{nilpotent_orbit_data(graph_filtration(omega), cone, 1,
                                            PolarizationForm(standard_symplectic(2), 1)),
                       pattern};
}

Mat period_direction(Index genus, Index i, Index j) {
  require(genus >= 1 && i >= 0 && j >= 0 && i < genus && j < genus,
          "period direction: indices must address a genus-sized matrix");
  Mat s = Mat::Zero(2 * genus, 2 * genus);
  s(i, genus + j) = Scalar(1);
  s(j, genus + i) = Scalar(1);
  return s;
}

Mat period_residual_pattern(const NilpotentOrbitData& orbit) {
  const ResidualTangentReport report = residual_tangent_data(orbit);
  const Index n = orbit.q.matrix.rows();
  const Subspace f1 = orbit.f.at(1);
  require(n % 2 == 0 && f1.dim() == n / 2,
          "residual pattern: F^1 must be half-dimensional");
  const Index g = n / 2;
  const Mat fb = f1.basis();
  const QuotientMap off_flag = quotient_map(f1, Subspace::full(n));

  // Coordinates in the tangent basis are recovered by comparing the induced
  // maps F¹ → ambient/F¹, which kill exactly the flag stabilizer.
  Mat conditions((n - g) * g, report.tangent_dim);
  for (Index k = 0; k < report.tangent_dim; ++k)
    conditions.col(k) =
        vec_of(Mat(off_flag.projection * report.tangent_basis[static_cast<std::size_t>(k)] * fb));
  const QuotientMap off_killed =
      quotient_map(report.killed, Subspace::full(report.tangent_dim));

  Mat mask = Mat::Zero(g, g);
  for (Index i = 0; i < g; ++i)
    for (Index j = i; j < g; ++j) {
      const Vec rhs = vec_of(Mat(off_flag.projection * period_direction(g, i, j) * fb));
      const auto coords = solve(conditions, rhs);
      if (!coords)
        throw InternalError("period direction outside the horizontal tangent space");
      if (!is_zero(Mat(off_killed.projection * *coords))) {
        mask(i, j) = Scalar(1);
        mask(j, i) = Scalar(1);
      }
    }
  return mask;
}

StrataComplexData genus3_strata() {
  return nodal_curve_strata(NodalCurveLayout{{1}, {{0, 0}, {0, 0}}});
}

}  // namespace hodgekit
