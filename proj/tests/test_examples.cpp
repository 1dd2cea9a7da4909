#include <map>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hodgekit/bigrading.hpp"
#include "hodgekit/error.hpp"
#include "hodgekit/examples.hpp"
#include "hodgekit/limit_period.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/strata.hpp"
#include "support.hpp"

using namespace hodgekit;

namespace {

Genus3Params sample_params() {
  return Genus3Params{Scalar(0), Scalar(Rational(1, 2)), Scalar(0),
                      Scalar(Rational(1, 3)), Scalar(Rational(1, 5)), Scalar::i()};
}

Scalar random_scalar(std::mt19937& rng) {
  return Scalar(testsupport::random_rational(rng), testsupport::random_rational(rng));
}

Genus3Params random_params(std::mt19937& rng) {
  Genus3Params p{random_scalar(rng), random_scalar(rng), random_scalar(rng),
                 random_scalar(rng), random_scalar(rng), random_scalar(rng)};
  if (!(p.c.im > 0)) p.c.im = p.c.im * Rational(-1) + 1;
  return p;
}

Mat interior_direction(const NilpotentOrbitData& orbit) {
  Mat n = Mat::Zero(orbit.q.matrix.rows(), orbit.q.matrix.cols());
  for (const NilpotentEndomorphism& gen : orbit.generators) n += gen.matrix;
  return n;
}

std::map<int, Index> string_weight_dims(const NStringDiagram& diagram) {
  std::map<int, Index> dims;
  for (const NString& s : diagram.strings)
    for (int j = 0; j <= s.length; ++j)
      dims[s.base_weight + 2 * j] += s.chain[static_cast<std::size_t>(j)].cols();
  return dims;
}

}  // namespace

TEST_CASE("the genus-3 orbit is a limiting mixed Hodge structure") {
  const NilpotentOrbitData orbit = genus3_orbit(sample_params());
  const Mat n = interior_direction(orbit);
  CHECK(nilpotent_orbit_check(orbit).ok);
  CHECK(lmhs_check(orbit, n).ok);
  CHECK(cone_weight_independence(orbit, 10));

  // The two vanishing cycles span the bottom of the weight filtration.
  const WeightFiltration w = weight_filtration(n, 1);
  Vec delta1 = Vec::Zero(6);
  delta1(0) = Scalar(1);
  Vec delta2 = Vec::Zero(6);
  delta2(1) = Scalar(1);
  CHECK(w.at(0) == Subspace::span_of(6, {delta1, delta2}));
  CHECK(w.at(-1) == Subspace::zero(6));
  CHECK(w.at(1).dim() == 4);

  // The monodromy logarithm is pure of bidegree (-1,-1) for the limit MHS.
  const MixedHodgeStructure mhs(w, orbit.f, orbit.q);
  const DeligneBigrading bg = deligne_bigrading(mhs);
  const auto parts = endomorphism_components(bg, n);
  REQUIRE(parts.size() == 1);
  CHECK(parts.begin()->first == std::make_pair(-1, -1));

  Genus3Params bad = sample_params();
  bad.c = Scalar(2);
  CHECK_THROWS_AS(genus3_orbit(bad), PreconditionError);
  bad.c = Scalar(Rational(0), Rational(-1));
  CHECK_THROWS_AS(genus3_orbit(bad), PreconditionError);
}

TEST_CASE("extension data splits into invariant and orbit-dependent layers") {
  std::mt19937 rng(1723);
  for (int trial = 0; trial < 50; ++trial) {
    const Genus3Params p = random_params(rng);
    const NilpotentOrbitData orbit = genus3_orbit(p);
    const Genus3ExtensionData data = genus3_extension_data(orbit);
    CHECK(data.c == p.c);
    CHECK(data.b1 == p.b1);
    CHECK(data.b2 == p.b2);
    CHECK(data.a12 == p.a12);
    CHECK(data.a11 == p.a11);
    CHECK(data.a22 == p.a22);
  }

  // Flowing along the orbit's own directions shifts exactly the diagonal.
  const Genus3Params p = random_params(rng);
  const NilpotentOrbitData orbit = genus3_orbit(p);
  const Scalar lambda(Rational(3, 2), Rational(-1, 3));
  const Mat flow = nilpotent_exp(Mat(lambda * interior_direction(orbit)));
  const HodgeFiltration moved({{1, image(flow, orbit.f.at(1))}});
  const NilpotentOrbitData moved_orbit = nilpotent_orbit_data(
      moved, {orbit.generators[0].matrix, orbit.generators[1].matrix}, 1, orbit.q);
  const Genus3ExtensionData data = genus3_extension_data(moved_orbit);
  CHECK(data.c == p.c);
  CHECK(data.b1 == p.b1);
  CHECK(data.b2 == p.b2);
  CHECK(data.a12 == p.a12);
  CHECK(data.a11 == p.a11 + lambda);
  CHECK(data.a22 == p.a22 + lambda);

  Genus3Params shifted = p;
  shifted.a11 = p.a11 + lambda;
  shifted.a22 = p.a22 + lambda;
  CHECK(genus3_orbit(shifted).f.at(1) == moved_orbit.f.at(1));

  // A filtration that is not a graph over the γ block is rejected.
  Mat degenerate = Mat::Zero(6, 3);
  degenerate(0, 0) = Scalar(1);
  degenerate(1, 1) = Scalar(1);
  degenerate(5, 2) = Scalar(1);
  degenerate(2, 2) = Scalar::i();
  const NilpotentOrbitData bad_shape = nilpotent_orbit_data(
      HodgeFiltration({{1, Subspace::span(degenerate)}}),
      {orbit.generators[0].matrix, orbit.generators[1].matrix}, 1, orbit.q);
  CHECK_THROWS_WITH_AS(genus3_extension_data(bad_shape), doctest::Contains("graph"),
                       PreconditionError);
}

TEST_CASE("orbit equivalence is exactly the diagonal shift") {
  std::mt19937 rng(88);
  const Genus3Params p = random_params(rng);
  const NilpotentOrbitData orbit = genus3_orbit(p);
  const Mat n1 = orbit.generators[0].matrix;
  const Mat n2 = orbit.generators[1].matrix;

  Genus3Params moved = p;
  moved.a11 = p.a11 + Scalar(Rational(5, 7));
  const auto along_n1 = equivalent_orbits(orbit.f, genus3_orbit(moved).f, n1);
  REQUIRE(along_n1.has_value());
  CHECK(*along_n1 == Scalar(Rational(5, 7)));
  CHECK(!equivalent_orbits(orbit.f, genus3_orbit(moved).f, n2).has_value());

  Genus3Params locked = p;
  locked.a12 = p.a12 + Scalar(1);
  CHECK(!equivalent_orbits(orbit.f, genus3_orbit(locked).f, n1).has_value());
  CHECK(!equivalent_orbits(orbit.f, genus3_orbit(locked).f, n2).has_value());
  CHECK(!equivalent_orbits(orbit.f, genus3_orbit(locked).f, Mat(n1 + n2)).has_value());

  Genus3Params both = p;
  both.a11 = p.a11 + Scalar(2);
  both.a22 = p.a22 + Scalar(2);
  const auto along_sum = equivalent_orbits(orbit.f, genus3_orbit(both).f, Mat(n1 + n2));
  REQUIRE(along_sum.has_value());
  CHECK(*along_sum == Scalar(2));
}

TEST_CASE("residual tangent directions match the published patterns") {
  // Genus 3: the diagonal over the nodes dies, (c, b1, b2, a12) survive.
  const NilpotentOrbitData g3 = genus3_orbit(sample_params());
  const ResidualTangentReport report = residual_tangent_data(g3);
  CHECK(report.tangent_dim == 6);
  CHECK(report.killed_dim == 2);
  CHECK(report.residual_dim == 4);
  CHECK(!report.generators_dependent);
  Mat expected3(3, 3);
  expected3 << Scalar(0), Scalar(1), Scalar(1),
               Scalar(1), Scalar(0), Scalar(1),
               Scalar(1), Scalar(1), Scalar(1);
  CHECK(is_zero(Mat(period_residual_pattern(g3) - expected3)));

  // Genus 2, case (i): only the off-diagonal coupling survives.
  const Genus2Fixture case_i = genus2_orbit(Genus2Case::i);
  CHECK(nilpotent_orbit_check(case_i.orbit).ok);
  const ResidualTangentReport ri = residual_tangent_data(case_i.orbit);
  CHECK(ri.tangent_dim == 3);
  CHECK(ri.killed_dim == 2);
  CHECK(ri.residual_dim == 1);
  CHECK(is_zero(Mat(period_residual_pattern(case_i.orbit) -
                    case_i.expected_residual_pattern)));

  // Genus 2, case (ii): the extra cycle kills everything.
  const Genus2Fixture case_ii = genus2_orbit(Genus2Case::ii);
  CHECK(nilpotent_orbit_check(case_ii.orbit).ok);
  const ResidualTangentReport rii = residual_tangent_data(case_ii.orbit);
  CHECK(rii.tangent_dim == 3);
  CHECK(rii.killed_dim == 3);
  CHECK(rii.residual_dim == 0);
  CHECK(!rii.generators_dependent);
  CHECK(is_zero(case_ii.expected_residual_pattern));
  CHECK(is_zero(period_residual_pattern(case_ii.orbit)));
}

TEST_CASE("both genus-2 cases share the two-node string diagram") {
  for (const Genus2Case which : {Genus2Case::i, Genus2Case::ii}) {
    const Genus2Fixture fixture = genus2_orbit(which);
    const NStringDiagram diagram =
        n_strings(fixture.orbit, interior_direction(fixture.orbit));
    REQUIRE(diagram.strings.size() == 1);
    CHECK(diagram.strings[0].base_weight == 0);
    CHECK(diagram.strings[0].length == 1);
    CHECK(diagram.strings[0].chain[0].cols() == 2);
    const std::map<int, Index> dims = string_weight_dims(diagram);
    CHECK(dims == std::map<int, Index>{{0, 2}, {2, 2}});
  }
}

TEST_CASE("strata route and orbit route agree on the genus-3 curve") {
  const StrataComplexData strata = genus3_strata();
  CHECK(validate_strata(strata).ok);
  CHECK(e1_multiplicity_audit(strata).ok);
  const std::map<int, Index> strata_dims =
      strata_string_weight_dims(strata_string_pieces(strata, 1));

  const NilpotentOrbitData orbit = genus3_orbit(sample_params());
  const std::map<int, Index> orbit_dims =
      string_weight_dims(n_strings(orbit, interior_direction(orbit)));

  CHECK(strata_dims == orbit_dims);
  CHECK(strata_dims == std::map<int, Index>{{0, 2}, {1, 2}, {2, 2}});
  Index total = 0;
  for (const auto& [w, d] : strata_dims) total += d;
  CHECK(total == 6);
}
