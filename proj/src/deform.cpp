#include "hodgekit/deform.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "hodgekit/error.hpp"

namespace hodgekit {

namespace {

bool all_real(const Mat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_real()) return false;
  return true;
}

Subspace localize_image(const DeformationData& d) {
  return image(d.localize, Subspace::full(d.ext_dim));
}

Vec coordinate_direction(Index n, Index a) {
  Vec e = Vec::Zero(n);
  e(a) = Scalar(1);
  return e;
}

// Scales a ray representative so its first nonzero entry is one; entries are
// real by construction.
Vec normalize_ray(Vec v) {
  for (Index i = 0; i < v.rows(); ++i)
    if (v(i) != Scalar(0)) return Vec(v / v(i));
  return v;
}

bool same_vector(const Vec& a, const Vec& b) { return is_zero(Mat(a - b)); }

// Extremal rays of span ∩ {v_a ≥ 0 ∀a} by double description in the span's
// coordinates: a direction is extremal iff it satisfies all constraints and
// its active constraints cut the span down to its line.
std::vector<Vec> octant_rays(const Mat& basis) {
  const Index a_count = basis.rows();
  const Index dim = basis.cols();
  std::vector<Vec> candidates;
  if (dim == 1) {
    candidates.push_back(Vec(basis.col(0)));
    candidates.push_back(Vec(-basis.col(0)));
  } else {
    // Directions where some dim−1 of the coordinate functionals vanish.
    std::vector<Index> picks(static_cast<std::size_t>(dim) - 1, 0);
    const auto enumerate = [&](auto&& self, Index from, Index depth) -> void {
      if (depth == dim - 1) {
        Mat active(dim - 1, dim);
        for (Index t = 0; t < dim - 1; ++t)
          active.row(t) = basis.row(picks[static_cast<std::size_t>(t)]);
        const Mat line = kernel(active);
        if (line.cols() != 1) return;
        candidates.push_back(Vec(basis * line.col(0)));
        candidates.push_back(Vec(-(basis * line.col(0))));
        return;
      }
      for (Index next = from; next < a_count; ++next) {
        picks[static_cast<std::size_t>(depth)] = next;
        self(self, next + 1, depth + 1);
      }
    };
    enumerate(enumerate, 0, 0);
  }

  std::vector<Vec> rays;
  for (const Vec& v : candidates) {
    bool feasible = true;
    std::vector<Index> active;
    for (Index a = 0; a < a_count && feasible; ++a) {
      if (v(a).re < 0) feasible = false;
      if (v(a) == Scalar(0)) active.push_back(a);
    }
    if (!feasible) continue;
    Mat act(static_cast<Index>(active.size()), dim);
    for (Index t = 0; t < act.rows(); ++t)
      act.row(t) = basis.row(active[static_cast<std::size_t>(t)]);
    if (rank(act) != dim - 1) continue;
    Vec ray = normalize_ray(v);
    bool seen = false;
    for (const Vec& known : rays) seen = seen || same_vector(known, ray);
    if (!seen) rays.push_back(std::move(ray));
  }
  return rays;
}

}  // namespace

DeformationData deformation_data(Index ext_dim, std::vector<std::string> components,
                                 Mat localize, std::optional<Mat> delta) {
  require(ext_dim >= 0, "deformation data: the global space dimension is nonnegative");
  require(!components.empty(), "deformation data: at least one component is required");
  const Index a_count = static_cast<Index>(components.size());
  require(localize.rows() == a_count && localize.cols() == ext_dim,
          "deformation data: localize must map the global space to one value "
          "per component");
  require(all_real(localize), "deformation data: localize must be rational");
  if (delta) {
    require(delta->cols() == a_count,
            "deformation data: delta must consume one value per component");
    require(all_real(*delta), "deformation data: delta must be rational");
  }
  return DeformationData{ext_dim, std::move(components), std::move(localize),
                         std::move(delta)};
}

ExactnessReport exactness_report(const DeformationData& d) {
  require(d.delta.has_value(), "exactness needs the obstruction map");
  ExactnessReport report;
  const Subspace img = localize_image(d);
  const Subspace ker = Subspace::span(kernel(*d.delta));
  report.image_dim = img.dim();
  report.kernel_dim = ker.dim();
  report.image_in_kernel = ker.contains(img);
  report.exact = report.image_in_kernel && img.dim() == ker.dim();
  return report;
}

bool smoothable_first_order(const DeformationData& d) {
  // The a-th coordinate functional vanishes on image(localize) exactly when
  // the a-th row of localize is zero.
  for (Index a = 0; a < d.localize.rows(); ++a)
    if (is_zero(Mat(d.localize.row(a)))) return false;
  return true;
}

std::vector<SmoothingStratum> strata_classification(const DeformationData& d) {
  const Index a_count = static_cast<Index>(d.components.size());
  require(a_count <= 20, "strata classification enumerates subsets; too many components");
  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < (1u << a_count); ++mask) masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b)
                                                : a < b;
  });

  std::vector<SmoothingStratum> strata;
  strata.reserve(masks.size());
  for (unsigned mask : masks) {
    SmoothingStratum stratum;
    for (Index a = 0; a < a_count; ++a)
      if (mask & (1u << a)) stratum.locked.push_back(a);
    Mat rows(static_cast<Index>(stratum.locked.size()), d.ext_dim);
    for (Index t = 0; t < rows.rows(); ++t)
      rows.row(t) = d.localize.row(stratum.locked[static_cast<std::size_t>(t)]);
    stratum.tangent = Subspace::span(kernel(rows));
    stratum.codim = d.ext_dim - stratum.tangent.dim();
    strata.push_back(std::move(stratum));
  }
  return strata;
}

bool independent_smoothing(const DeformationData& d) {
  const Subspace img = localize_image(d);
  const Index a_count = static_cast<Index>(d.components.size());
  for (Index a = 0; a < a_count; ++a)
    if (!img.contains(coordinate_direction(a_count, a))) return false;
  return true;
}

bool SmoothingCone::contains(const Vec& v) const {
  if (v.rows() != components || !span.contains(v)) return false;
  for (Index a = 0; a < components; ++a)
    if (!v(a).is_real() || !(v(a).re > 0)) return false;
  return true;
}

SmoothingCone smoothing_cone(const DeformationData& d) {
  require(smoothable_first_order(d),
          "the smoothing cone needs a first-order smoothable configuration");
  SmoothingCone cone;
  cone.components = static_cast<Index>(d.components.size());
  cone.span = localize_image(d);
  if (independent_smoothing(d)) {
    // Every component smooths in isolation, so the span is the whole space
    // and the closure of the cone is the coordinate octant.
    for (Index a = 0; a < cone.components; ++a)
      cone.generators.push_back(coordinate_direction(cone.components, a));
    cone.rays_enumerated = true;
    cone.simplicial = true;
    return cone;
  }
  if (cone.span.dim() > 3) return cone;  // membership test only
  cone.generators = octant_rays(cone.span.basis());
  cone.rays_enumerated = true;
  cone.simplicial = static_cast<Index>(cone.generators.size()) == cone.span.dim();
  return cone;
}

P2LineReport classify_p2_line(const DeformationData& d) {
  require(d.components.size() == 3,
          "the plane classification needs exactly three components");
  require(d.delta.has_value(), "the plane classification needs the obstruction map");
  const Subspace plane = Subspace::span(kernel(*d.delta));
  require(plane.dim() == 2, "the plane classification needs a two-dimensional "
                            "kernel of the obstruction map");

  P2LineReport report;
  for (Index a = 0; a < 3; ++a)
    if (plane.contains(coordinate_direction(3, a))) report.axes_contained.push_back(a);

  switch (report.axes_contained.size()) {
    case 0:
      report.label = P2LineCase::i;
      break;
    case 1:
      // The remaining two coordinate functionals are proportional on the
      // plane: those components vanish together, hence lock.
      report.label = P2LineCase::ii;
      for (Index a = 0; a < 3; ++a)
        if (a != report.axes_contained.front()) report.locked.push_back(a);
      break;
    default: {
      // A coordinate plane: the opposite coordinate vanishes identically, so
      // that component never smooths and the configuration cannot be
      // first-order smoothable with exact localization.
      report.label = P2LineCase::iii;
      report.excluded_by_smoothability = true;
      for (Index a = 0; a < 3; ++a) {
        const bool contained =
            std::find(report.axes_contained.begin(), report.axes_contained.end(), a) !=
            report.axes_contained.end();
        if (!contained) report.locked.push_back(a);
      }
      break;
    }
  }
  return report;
}

}  // namespace hodgekit
