// The Deligne bigrading of a mixed Hodge structure and everything built
// directly on it: the ℝ-split test, the canonical ℝ-splitting e^{-iδ}F, and
// the induced mixed Hodge structure on the polarized endomorphism algebra.
//
// Provides:
//  - DeligneBigrading: the canonical pieces I^{p,q} with
//      F^p = ⊕_{r>=p} I^{r,*},  W_k = ⊕_{p+q<=k} I^{p,q},
//      I^{p,q} ≡ conj(I^{q,p}) mod W_{p+q-2}
//    computed by the closed formula
//      I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q}
//                 + Σ_{j>=1} conj F^{q-j} ∩ W_{p+q-j-1})
//    with all three properties asserted after construction
//  - grading_operator / endomorphism_components: the semisimple weight
//    operator and the decomposition of endomorphisms into bigraded pieces
//  - is_r_split / r_split: conj(I^{p,q}) = I^{q,p} exactly, and the canonical
//    real correction δ (supported in bidegrees (-r,-s), r,s >= 1) with
//    e^{-iδ}F ℝ-split, solved depth by depth
//  - lie_algebra_mhs: the MHS on g = {A : Q(Au,v) + Q(u,Av) = 0} with
//    W_k(g) = {A : A W_j ⊆ W_{j+k}} and F^p(g) = {A : A F^j ⊆ F^{j+p}}
#pragma once

#include <map>
#include <utility>

#include "hodgekit/mhs.hpp"

namespace hodgekit {

struct DeligneBigrading {
  Index ambient = 0;
  std::map<std::pair<int, int>, Subspace> pieces;  // nonzero I^{p,q}, sorted by (p,q)

  Subspace piece(int p, int q) const;
  Index dim(int p, int q) const;
};

// Computes the bigrading and asserts its defining properties. Throws
// PreconditionError with the failing (k, p) witness when (W, F) is not a
// mixed Hodge structure.
DeligneBigrading deligne_bigrading(const WeightFiltration& w, const HodgeFiltration& f);
DeligneBigrading deligne_bigrading(const MixedHodgeStructure& mhs);

// The semisimple operator acting as (p+q) * id on I^{p,q}.
Mat grading_operator(const DeligneBigrading& bg);

// Decomposition of a square matrix into bigraded components: the (a,b) entry
// maps I^{p,q} into I^{p+a,q+b}. Only nonzero components are returned; they
// sum to m.
std::map<std::pair<int, int>, Mat> endomorphism_components(const DeligneBigrading& bg,
                                                           const Mat& m);

bool is_r_split(const DeligneBigrading& bg);
bool is_r_split(const MixedHodgeStructure& mhs);

// The canonical ℝ-split structure (W, e^{-iδ}F) associated to a MHS: δ is the
// unique real endomorphism supported in bidegrees (-r,-s) with r,s >= 1 such
// that conj(I^{p,q}) = e^{-2iδ} I^{q,p} for all (p,q). ℝ-split inputs are
// returned unchanged (exact idempotence). A failed solve means the input or
// the bigrading code is broken and raises InternalError.
MixedHodgeStructure r_split(const MixedHodgeStructure& mhs);

// Basis of g = {A : AᵀQ + QA = 0} as columns vec(B_a) (column-major). The
// defining equations have entries of q as coefficients, so a real q gives a
// real basis. Requires q square.
Mat infinitesimal_isometries(const Mat& q);

// g = {A ∈ End(V) : Q(Au,v) + Q(u,Av) = 0} in its own coordinates: `basis`
// columns are vec(B_a) (column-major) for the canonical basis {B_a} of g, and
// `mhs` carries the induced filtrations (weight filtration centered at 0).
struct LieAlgebraMhs {
  Mat basis;  // n^2 x g
  Index n;    // ambient dimension of the underlying space V
  MixedHodgeStructure mhs;

  Index dim() const { return basis.cols(); }
  // Σ x_a B_a as an n x n matrix.
  Mat from_coords(const Vec& x) const;
  // Coordinates of a, or nullopt when a ∉ g.
  std::optional<Vec> to_coords(const Mat& a) const;
};

// Requires mhs.q(); throws PreconditionError otherwise.
LieAlgebraMhs lie_algebra_mhs(const MixedHodgeStructure& mhs);

}  // namespace hodgekit
