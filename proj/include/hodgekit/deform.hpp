// Linear-algebra model of first-order deformations of a normal crossing
// variety: a global deformation space, per-component localization, and the
// obstruction map, from which smoothability, the lattice of equisingular
// strata, the smoothing cone, and the plane classification of triple-point
// configurations are computed.
//
// Provides:
//  - DeformationData: ext_dim-dimensional global space E, component labels A,
//    localize: E → ℚ^|A| (per-component leading term), optional delta:
//    ℚ^|A| → obstruction space
//  - exactness_report: whether image(localize) equals ker(delta)
//  - smoothable_first_order: every coordinate functional nonzero on the image
//  - strata_classification: tangent space T^B = {ξ : localize(ξ)_b = 0
//    ∀ b ∈ B} for every subset B of components, with codimensions
//  - independent_smoothing / smoothing_cone: whether each component smooths
//    in isolation, and the cone {v ∈ image(localize) : v_a > 0 ∀a} described
//    by extremal rays of its closure (enumerated up to 3-dimensional spans)
//  - classify_p2_line: for three components, the position of the plane
//    ker(delta) relative to the coordinate axes
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgekit/matrix.hpp"
#include "hodgekit/subspace.hpp"

namespace hodgekit {

// All matrices are rational: imaginary parts are rejected at construction.
struct DeformationData {
  Index ext_dim = 0;
  std::vector<std::string> components;
  Mat localize;              // |A| × ext_dim
  std::optional<Mat> delta;  // rows = obstruction dim, cols = |A|
};

// Validates shapes (localize is |A| × ext_dim, delta has |A| columns when
// present), requires at least one component and real entries; throws
// PreconditionError otherwise.
DeformationData deformation_data(Index ext_dim, std::vector<std::string> components,
                                 Mat localize, std::optional<Mat> delta = {});

// Exactness of E → ℚ^|A| → obstructions at the middle spot. Both failure
// modes are reported: classes that obstruct (image not inside the kernel)
// and kernel classes missed by the global space.
struct ExactnessReport {
  bool exact = false;
  bool image_in_kernel = false;
  Index image_dim = 0;
  Index kernel_dim = 0;
};

// Requires delta to be present.
ExactnessReport exactness_report(const DeformationData& d);

// True iff every coordinate functional of ℚ^|A| is nonzero on
// image(localize); over the rationals this is equivalent to the existence of
// a single class whose localization is nonzero at every component.
bool smoothable_first_order(const DeformationData& d);

// The deformations equisingular along the subset B of components.
struct SmoothingStratum {
  std::vector<Index> locked;               // B, as sorted component indices
  Subspace tangent = Subspace::zero(0);    // T^B ⊆ E
  Index codim = 0;                         // ext_dim − dim T^B
};

// All 2^|A| strata ordered by |B| (then lexicographically by B); the first
// entry is the full space (B = ∅), the last the equisingular tangent space
// (B = A). Requires |A| ≤ 20.
std::vector<SmoothingStratum> strata_classification(const DeformationData& d);

// True iff image(localize) contains every coordinate line, i.e. each
// component admits a deformation smoothing it and no other.
bool independent_smoothing(const DeformationData& d);

// The open cone {v ∈ image(localize) : v_a > 0 ∀a}, described by the
// extremal rays of its closure. When the components smooth independently
// the rays are the |A| coordinate directions; otherwise they are enumerated
// by double description for spans of dimension ≤ 3, and for larger spans
// only the membership test is offered. Rays are normalized so the first
// nonzero entry is one.
struct SmoothingCone {
  Index components = 0;                  // |A|
  Subspace span = Subspace::zero(0);     // image(localize) ⊆ ℚ^|A|
  std::vector<Vec> generators;
  bool rays_enumerated = false;
  bool simplicial = false;               // generator count equals span dim

  // Strict membership: inside the span with every coordinate positive.
  bool contains(const Vec& v) const;
};

// Requires smoothable_first_order(d).
SmoothingCone smoothing_cone(const DeformationData& d);

// Position of the plane ker(delta) ⊆ ℚ³ relative to the coordinate axes,
// i.e. of the projective line it defines relative to the triangle of
// components: (i) through no vertex, (ii) through exactly one vertex — the
// other two components lock together, (iii) an edge of the triangle — the
// opposite component can never smooth, which first-order smoothability
// excludes.
enum class P2LineCase { i, ii, iii };

struct P2LineReport {
  P2LineCase label = P2LineCase::i;
  std::vector<Index> axes_contained;  // components whose axis lies in the plane
  std::vector<Index> locked;          // components forced to move together
  bool excluded_by_smoothability = false;
};

// Requires exactly three components, delta present, and dim ker(delta) = 2.
P2LineReport classify_p2_line(const DeformationData& d);

}  // namespace hodgekit
