// Limits of one-parameter period maps at the boundary of a period domain.
//
// A nilpotent orbit z ↦ exp(zN)·F moves a Hodge flag along polynomial
// frames; as Im z → ∞ each member of the flag converges in its Grassmannian,
// and the limit flag F∞ together with the tangent-level behaviour of the
// limit map Φ∞ is what this header computes, exactly:
//  - PolynomialFrame / grassmannian_limit: frames with entries in ℚ(i)[z]
//    and their limiting subspace, by leading-term reduction
//  - reduced_lpm: the boundary flag F∞ with F∞^p = lim_z exp(zN)·F^p,
//    constant along the orbit (Φ∞(exp(wN)·F) = Φ∞(F)) and N-stable
//  - lie_quadrants: the differential of Φ∞ on the isometry algebra in
//    bigraded coordinates: kernel, transported, and cokernel regions
//  - orbit_tangent_dim: real dimension of the real-group orbit through a flag
//  - orbit_invariants: the table dim(F∞^p ∩ conj(F∞^q))
//  - residual_tangent_data: horizontal tangent directions at F modulo the
//    directions spanned by the cone generators
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hodgekit/bigrading.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/monodromy.hpp"

namespace hodgekit {

// frame(z) = Σ_d coeff[d]·z^d with all coefficient matrices of equal shape;
// column j sweeps out a curve of vectors, and the frame a curve of subspaces.
struct PolynomialFrame {
  std::vector<Mat> coeff;  // ascending by degree, trailing zero matrices trimmed

  Index rows() const;
  Index cols() const;
  int degree() const;  // -1 for the zero frame
  Mat eval(const Scalar& z) const;
};

// Validates equal shapes and that the columns are linearly independent over
// the rational-function field ℚ(i)(z) (rank is checked at enough sample
// points to certify a nonzero top minor); throws PreconditionError otherwise.
PolynomialFrame polynomial_frame(std::vector<Mat> coeff);

// The frame exp(z·n)·basis for nilpotent n: coefficient of z^d is n^d/d!·basis.
PolynomialFrame exp_orbit_frame(const Mat& n, const Mat& basis);

// lim_{z→∞} span(frame(z)) in the Grassmannian. While the leading vectors of
// the columns are dependent, a dependency Σ α_j·lead_j = 0 is used to replace
// the participating column of largest degree by Σ α_j·z^{d_max-d_j}·col_j,
// which has strictly smaller degree; when the leading vectors become
// independent their span is the limit. The limit dimension always equals the
// column count.
Subspace grassmannian_limit(const PolynomialFrame& frame);

// The limiting flag of a nilpotent orbit. `interior` marks the trivial-cone
// case N = 0, where the limit map is the identity and the flag is the
// original interior point.
struct BoundaryFlag {
  HodgeFiltration f_infinity;
  bool interior = false;
};

// Φ∞ of the orbit at n: F∞^p = lim_{z→∞} exp(z·n)·F^p for every p. Requires
// lmhs_check(orbit, n) to pass and throws PreconditionError with its verdict
// otherwise. Postconditions, violations raising InternalError: every level
// keeps its dimension and n·F∞^p ⊆ F∞^p.
BoundaryFlag reduced_lpm(const NilpotentOrbitData& orbit, const Mat& n);

// The differential of Φ∞ in bigraded coordinates on the isometry algebra g.
// With I^{p,q}_g the Deligne pieces of g under the limiting mixed Hodge
// structure (made ℝ-split first when it is not), the tangent space at F is
// ⊕_{p≤-1} I^{p,q}_g, the tangent space at F∞ is ⊕_{q≥1} I^{p,q}_g, and
// Φ∞,* is the identity where the two overlap. The bidegrees partition into
//   kernel:      p ≤ -1, q ≤ 0   (directions collapsed by the limit)
//   transported: p ≤ -1, q ≥ 1   (carried isomorphically to the boundary)
//   cokernel:    p ≥ 0,  q ≥ 1   (boundary directions missed by the image)
// and the remaining quadrant (p ≥ 0, q ≤ 0), which stabilizes both flags.
struct QuadrantReport {
  std::map<std::pair<int, int>, Index> pieces;  // nonzero dims of I^{p,q}_g
  Index kernel_dim = 0;
  Index transported_dim = 0;
  Index cokernel_dim = 0;
  Index stabilizer_dim = 0;
};

// Requires lmhs_check(orbit, n) to pass; throws PreconditionError otherwise.
QuadrantReport lie_quadrants(const NilpotentOrbitData& orbit, const Mat& n);

// Real dimension of the orbit of the real isometry group of q through the
// flag: the rank of g_ℝ → g_ℂ / stab(F∞). Computed two independent ways —
// the realified image rank, and dim g − dim(stab ∩ conj(stab)) — which must
// agree; disagreement raises InternalError.
Index orbit_tangent_dim(const BoundaryFlag& flag, const PolarizationForm& q);

// The table dim(F∞^p ∩ conj(F∞^q)) for p, q over the saturated window
// [lowest-1, highest+1]. Equal flags give equal tables, and swapping (p,q)
// with (q,p) transposes the table.
std::map<std::pair<int, int>, Index> orbit_invariants(const BoundaryFlag& flag);

// Horizontal tangent directions at F inside the isometry algebra — classes of
// {A ∈ g : A·F^p ⊆ F^{p-1}} modulo the flag stabilizer {A : A·F^p ⊆ F^p} —
// together with the subspace the cone generators span there. The residual
// quotient is what remains of a period map's derivative once the orbit's own
// directions are removed.
struct ResidualTangentReport {
  Index tangent_dim = 0;
  Index killed_dim = 0;    // dimension of the span of the generator classes
  Index residual_dim = 0;  // tangent_dim - killed_dim
  bool generators_dependent = false;     // killed_dim < generator count
  Subspace killed = Subspace::zero(0);   // generator span, in tangent coordinates
  std::vector<Mat> tangent_basis;     // matrices realizing the tangent coordinates
};

ResidualTangentReport residual_tangent_data(const NilpotentOrbitData& orbit);

}  // namespace hodgekit
