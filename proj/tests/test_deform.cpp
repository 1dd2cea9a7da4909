#include <algorithm>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hodgekit/deform.hpp"
#include "hodgekit/error.hpp"
#include "support.hpp"

using namespace hodgekit;

namespace {

Vec rvec(std::initializer_list<int> entries) {
  Vec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int x : entries) v(i++) = Scalar(x);
  return v;
}

Mat mat_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Mat m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    REQUIRE(static_cast<Index>(row.size()) == c);
    Index j = 0;
    for (int x : row) m(i, j++) = Scalar(x);
    ++i;
  }
  return m;
}

std::vector<std::string> labels(Index count) {
  std::vector<std::string> out;
  for (Index a = 0; a < count; ++a) out.push_back("D" + std::to_string(a + 1));
  return out;
}

bool has_generator(const SmoothingCone& cone, const Vec& ray) {
  return std::any_of(cone.generators.begin(), cone.generators.end(),
                     [&](const Vec& g) { return is_zero(Mat(g - ray)); });
}

}  // namespace

TEST_CASE("deformation data validates shapes and rationality") {
  CHECK_NOTHROW(deformation_data(2, labels(3), Mat::Zero(3, 2)));
  CHECK_THROWS_AS(deformation_data(2, labels(3), Mat::Zero(2, 2)), PreconditionError);
  CHECK_THROWS_AS(deformation_data(2, labels(3), Mat::Zero(3, 3)), PreconditionError);
  CHECK_THROWS_AS(deformation_data(2, {}, Mat::Zero(0, 2)), PreconditionError);
  CHECK_THROWS_AS(
      deformation_data(2, labels(3), Mat::Zero(3, 2), Mat(Mat::Zero(1, 2))),
      PreconditionError);

  Mat complex_entries = Mat::Zero(3, 2);
  complex_entries(0, 0) = Scalar::i();
  CHECK_THROWS_AS(deformation_data(2, labels(3), complex_entries), PreconditionError);
}

TEST_CASE("exactness of the localization sequence is reported, not assumed") {
  // Image = kernel: the plane of coordinate sums zero.
  const DeformationData exact = deformation_data(
      2, labels(3), mat_rows({{1, 0}, {0, 1}, {-1, -1}}), mat_rows({{1, 1, 1}}));
  const ExactnessReport good = exactness_report(exact);
  CHECK(good.exact);
  CHECK(good.image_in_kernel);
  CHECK(good.image_dim == 2);
  CHECK(good.kernel_dim == 2);

  // Image strictly inside the kernel.
  const DeformationData small = deformation_data(
      1, labels(3), mat_rows({{1}, {0}, {-1}}), mat_rows({{1, 1, 1}}));
  const ExactnessReport partial = exactness_report(small);
  CHECK(!partial.exact);
  CHECK(partial.image_in_kernel);
  CHECK(partial.image_dim == 1);
  CHECK(partial.kernel_dim == 2);

  // Obstructed classes: the image sticks out of the kernel.
  const DeformationData obstructed = deformation_data(
      3, labels(3), mat_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), mat_rows({{1, 1, 1}}));
  CHECK(!exactness_report(obstructed).image_in_kernel);
  CHECK(!exactness_report(obstructed).exact);

  const DeformationData no_delta = deformation_data(1, labels(2), Mat::Zero(2, 1));
  CHECK_THROWS_AS(exactness_report(no_delta), PreconditionError);
}

TEST_CASE("first-order smoothability matches a sampling oracle") {
  CHECK(smoothable_first_order(
      deformation_data(3, labels(3), mat_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))));
  CHECK(!smoothable_first_order(
      deformation_data(2, labels(3), mat_rows({{1, 0}, {0, 0}, {0, 1}}))));
  // Diagonal smoothing only: one class moving every component at once.
  CHECK(smoothable_first_order(
      deformation_data(1, labels(3), mat_rows({{1}, {1}, {1}}))));

  std::mt19937 rng(424242);
  std::uniform_int_distribution<Index> dim_pick(1, 4);
  std::uniform_int_distribution<int> zero_row(0, 2);
  for (int trial = 0; trial < 12; ++trial) {
    const Index ext_dim = dim_pick(rng);
    const Index a_count = dim_pick(rng);
    Mat localize(a_count, ext_dim);
    for (Index a = 0; a < a_count; ++a) {
      const bool kill = zero_row(rng) == 0;
      for (Index j = 0; j < ext_dim; ++j)
        localize(a, j) = kill ? Scalar(0) : Scalar(testsupport::random_rational(rng));
    }
    const DeformationData d = deformation_data(ext_dim, labels(a_count), localize);
    const bool deterministic = smoothable_first_order(d);

    bool sampled = false;
    for (int s = 0; s < 1000 && !sampled; ++s) {
      Vec xi(ext_dim);
      for (Index j = 0; j < ext_dim; ++j) xi(j) = Scalar(testsupport::random_rational(rng));
      const Vec v = Vec(localize * xi);
      bool all_nonzero = true;
      for (Index a = 0; a < a_count; ++a) all_nonzero &= v(a) != Scalar(0);
      sampled = all_nonzero;
    }
    // A sample certifies smoothability exactly; the converse direction is
    // overwhelmingly likely with a thousand draws.
    CHECK(sampled == deterministic);
  }
}

TEST_CASE("strata classification lists every equisingularity locus") {
  const std::vector<SmoothingStratum> full = strata_classification(
      deformation_data(3, labels(3), mat_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  REQUIRE(full.size() == 8);
  const std::vector<Index> expected_dims{3, 2, 2, 2, 1, 1, 1, 0};
  for (std::size_t s = 0; s < full.size(); ++s) {
    CHECK(full[s].tangent.dim() == expected_dims[s]);
    CHECK(full[s].codim == 3 - expected_dims[s]);
  }
  CHECK(full.front().locked.empty());
  CHECK(full.back().locked == std::vector<Index>{0, 1, 2});

  // A two-dimensional equisingular core shifts every stratum dimension.
  const std::vector<SmoothingStratum> offset = strata_classification(deformation_data(
      5, labels(3), mat_rows({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}})));
  for (std::size_t s = 0; s < offset.size(); ++s)
    CHECK(offset[s].tangent.dim() == expected_dims[s] + 2);

  // Diagonal image: any one component held equisingular holds all of them.
  const std::vector<SmoothingStratum> diagonal = strata_classification(
      deformation_data(1, labels(3), mat_rows({{1}, {1}, {1}})));
  CHECK(diagonal[0].tangent.dim() == 1);
  for (std::size_t s = 1; s < diagonal.size(); ++s)
    CHECK(diagonal[s].tangent.dim() == 0);

  // Monotonicity: locking more components can only shrink the tangent space.
  std::mt19937 rng(99);
  Mat random_localize(3, 2);
  for (Index a = 0; a < 3; ++a)
    for (Index j = 0; j < 2; ++j) random_localize(a, j) = Scalar(testsupport::random_rational(rng));
  const std::vector<SmoothingStratum> strata =
      strata_classification(deformation_data(2, labels(3), random_localize));
  for (const SmoothingStratum& coarse : strata)
    for (const SmoothingStratum& fine : strata)
      if (std::includes(fine.locked.begin(), fine.locked.end(), coarse.locked.begin(),
                        coarse.locked.end()))
        CHECK(coarse.tangent.contains(fine.tangent));

  CHECK_THROWS_AS(strata_classification(deformation_data(1, labels(21), Mat::Zero(21, 1))),
                  PreconditionError);
}

TEST_CASE("independent smoothing detects locked components") {
  CHECK(independent_smoothing(
      deformation_data(2, labels(2), mat_rows({{1, 0}, {0, 1}}))));
  CHECK(!independent_smoothing(
      deformation_data(1, labels(3), mat_rows({{1}, {1}, {1}}))));
  CHECK(!independent_smoothing(
      deformation_data(2, labels(3), mat_rows({{1, 0}, {0, 1}, {0, 1}}))));
  CHECK(independent_smoothing(
      deformation_data(3, labels(3), mat_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))));
}

TEST_CASE("the smoothing cone is described by its extremal rays") {
  // Independent components: the coordinate octant.
  const SmoothingCone octant =
      smoothing_cone(deformation_data(2, labels(2), mat_rows({{1, 0}, {0, 1}})));
  CHECK(octant.rays_enumerated);
  CHECK(octant.simplicial);
  REQUIRE(octant.generators.size() == 2);
  CHECK(has_generator(octant, rvec({1, 0})));
  CHECK(has_generator(octant, rvec({0, 1})));
  CHECK(octant.contains(rvec({1, 2})));
  CHECK(!octant.contains(rvec({1, 0})));  // the open cone excludes its boundary
  CHECK(!octant.contains(rvec({-1, -1})));

  // Diagonal image: a single ray.
  const SmoothingCone ray =
      smoothing_cone(deformation_data(1, labels(3), mat_rows({{1}, {1}, {1}})));
  CHECK(ray.rays_enumerated);
  CHECK(ray.simplicial);
  REQUIRE(ray.generators.size() == 1);
  CHECK(has_generator(ray, rvec({1, 1, 1})));
  CHECK(ray.contains(rvec({2, 2, 2})));
  CHECK(!ray.contains(rvec({1, 1, 0})));
  CHECK(!ray.contains(rvec({-1, -1, -1})));

  // A plane meeting the open octant leaves along two boundary rays.
  const SmoothingCone sector =
      smoothing_cone(deformation_data(2, labels(3), mat_rows({{1, 0}, {1, 0}, {0, 1}})));
  CHECK(sector.rays_enumerated);
  CHECK(sector.simplicial);
  REQUIRE(sector.generators.size() == 2);
  CHECK(has_generator(sector, rvec({1, 1, 0})));
  CHECK(has_generator(sector, rvec({0, 0, 1})));
  CHECK(sector.contains(rvec({1, 1, 1})));
  CHECK(!sector.contains(rvec({1, 0, 1})));

  // A plane missing the open octant: one closure ray, nothing strictly inside.
  const SmoothingCone empty =
      smoothing_cone(deformation_data(2, labels(3), mat_rows({{1, 0}, {-1, 0}, {0, 1}})));
  CHECK(empty.rays_enumerated);
  CHECK(!empty.simplicial);
  REQUIRE(empty.generators.size() == 1);
  CHECK(has_generator(empty, rvec({0, 0, 1})));
  CHECK(!empty.contains(rvec({0, 0, 1})));

  // Three-dimensional span with two components locked together.
  const SmoothingCone locked = smoothing_cone(deformation_data(
      3, labels(4),
      mat_rows({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  CHECK(locked.rays_enumerated);
  CHECK(locked.simplicial);
  REQUIRE(locked.generators.size() == 3);
  CHECK(has_generator(locked, rvec({1, 1, 0, 0})));
  CHECK(has_generator(locked, rvec({0, 0, 1, 0})));
  CHECK(has_generator(locked, rvec({0, 0, 0, 1})));

  // Above three dimensions only the membership test is offered.
  const SmoothingCone big = smoothing_cone(deformation_data(
      4, labels(5),
      mat_rows({{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})));
  CHECK(!big.rays_enumerated);
  CHECK(big.generators.empty());
  CHECK(big.span.dim() == 4);
  CHECK(big.contains(rvec({1, 1, 2, 3, 4})));
  CHECK(!big.contains(rvec({1, 2, 1, 1, 1})));

  CHECK_THROWS_AS(
      smoothing_cone(deformation_data(2, labels(2), mat_rows({{1, 0}, {0, 0}}))),
      PreconditionError);
}

TEST_CASE("the plane of unobstructed localizations falls in one of three cases") {
  const Mat localize = Mat::Zero(3, 1);

  // Through no vertex of the coordinate triangle.
  const P2LineReport through_none = classify_p2_line(
      deformation_data(1, labels(3), localize, mat_rows({{1, 1, 1}})));
  CHECK(through_none.label == P2LineCase::i);
  CHECK(through_none.axes_contained.empty());
  CHECK(through_none.locked.empty());
  CHECK(!through_none.excluded_by_smoothability);

  // Through one vertex: the plane contains the first axis, so the second and
  // third components vanish together on it.
  const P2LineReport through_one = classify_p2_line(
      deformation_data(1, labels(3), localize, mat_rows({{0, 1, 1}})));
  CHECK(through_one.label == P2LineCase::ii);
  CHECK(through_one.axes_contained == std::vector<Index>{0});
  CHECK(through_one.locked == std::vector<Index>{1, 2});

  // A coordinate plane: the third component can never smooth.
  const P2LineReport edge = classify_p2_line(
      deformation_data(1, labels(3), localize, mat_rows({{0, 0, 1}})));
  CHECK(edge.label == P2LineCase::iii);
  CHECK(edge.axes_contained == std::vector<Index>{0, 1});
  CHECK(edge.locked == std::vector<Index>{2});
  CHECK(edge.excluded_by_smoothability);

  CHECK_THROWS_AS(classify_p2_line(deformation_data(1, labels(2), Mat::Zero(2, 1),
                                                    mat_rows({{1, 1}}))),
                  PreconditionError);
  CHECK_THROWS_AS(classify_p2_line(deformation_data(1, labels(3), localize)),
                  PreconditionError);
  CHECK_THROWS_AS(classify_p2_line(deformation_data(
                      1, labels(3), localize, mat_rows({{1, 0, 0}, {0, 1, 0}}))),
                  PreconditionError);
}

TEST_CASE("plane classification is equivariant under relabeling and rescaling") {
  const std::vector<Mat> deltas{mat_rows({{1, 1, 1}}), mat_rows({{0, 1, 1}}),
                                mat_rows({{0, 0, 1}})};
  const std::vector<std::vector<Index>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> scale_pick(1, 5);
  const Mat localize = Mat::Zero(3, 1);
  for (const Mat& delta : deltas) {
    const P2LineReport base =
        classify_p2_line(deformation_data(1, labels(3), localize, delta));
    for (const auto& perm : perms) {
      // Coordinates change by a permutation and positive scalings; the
      // obstruction map is composed with that change and rescaled itself.
      Mat change = Mat::Zero(3, 3);
      for (Index a = 0; a < 3; ++a) change(perm[static_cast<std::size_t>(a)], a) =
          Scalar(scale_pick(rng));
      const Mat moved = Mat(Scalar(scale_pick(rng)) * delta * change);
      const P2LineReport relabeled =
          classify_p2_line(deformation_data(1, labels(3), localize, moved));
      CHECK(relabeled.label == base.label);
      CHECK(relabeled.excluded_by_smoothability == base.excluded_by_smoothability);
      std::vector<Index> mapped_axes;
      for (Index a : relabeled.axes_contained)
        mapped_axes.push_back(perm[static_cast<std::size_t>(a)]);
      std::sort(mapped_axes.begin(), mapped_axes.end());
      CHECK(mapped_axes == base.axes_contained);
      std::vector<Index> mapped_locked;
      for (Index a : relabeled.locked)
        mapped_locked.push_back(perm[static_cast<std::size_t>(a)]);
      std::sort(mapped_locked.begin(), mapped_locked.end());
      CHECK(mapped_locked == base.locked);
    }
  }
}
