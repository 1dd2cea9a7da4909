// Stratum cohomology of a normal crossing variety and the calculus built on
// it: alternating restriction and Gysin maps, the anti-commutativity test
// that characterizes smoothable configurations, the weight spectral sequence
// first page, and the string decomposition of the limit cohomology.
//
// Provides:
//  - StratumSpaces / StrataComplexData: dimensioned graded spaces H^q(X^[k])
//    (optionally Hodge-graded) with Rest: H^q(X^[k]) → H^q(X^[k+1]) and
//    Gy: H^q(X^[k]) → H^{q+2}(X^[k-1]); both square to zero by construction
//  - validate_strata: Rest∘Gy = −Gy∘Rest on every composable square, with
//    the failing square and residual matrix reported
//  - e1_page / e1_multiplicity_audit: the first page E₁^{a,b}(i) built from
//    Hodge pieces, with per-cell provenance; the audit certifies each
//    H^{r,•}(X^[t]) appears at exactly one i and at exactly t values of b
//    with parity b ≡ 1−t (mod 2) inside t−1 ≥ b ≥ 1−t
//  - strata_string_pieces: for 0 ≤ j ≤ i ≤ m the space H^{m−i}(−j) computed as
//    Gysin-direction cohomology first, then restriction-direction cohomology,
//    plus the twisted-identity maps along each string
//  - surface_double_curve / nodal_curve_strata: exactly solvable generators
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/matrix.hpp"
#include "hodgekit/subspace.hpp"

namespace hodgekit {

// A twisted summand H^q(X^[t])(−k) participates in the string complexes iff
// 0 ≤ k ≤ t − 1 − kTwistAdmissionSlack. The stricter textual reading
// (k < t − 1) corresponds to slack 1; slack 0 is the value the dual-graph
// oracle confirms on the curve fixtures.
inline constexpr int kTwistAdmissionSlack = 0;

// One graded space H^q(X^[k]); `hodge` maps p to dim H^{p,q-p} when present.
struct GradedPiece {
  Index dim = 0;
  std::optional<std::map<int, Index>> hodge;
};

// All strata: level k ≥ 1 holds the k-fold intersection locus X^[k] of
// complex dimension dim_x + 1 − k; `levels` maps k to (q → H^q(X^[k])).
struct StratumSpaces {
  int dim_x = 0;
  std::map<int, std::map<int, GradedPiece>> levels;
};

// Validates: k ≥ 1, 0 ≤ q ≤ 2(dim_x + 1 − k), nonnegative dims, and any
// Hodge grading sums to the dimension with h^{p,q-p} = h^{q-p,p} and
// nonnegative bidegrees. Throws PreconditionError otherwise.
StratumSpaces stratum_spaces(int dim_x, std::map<int, std::map<int, GradedPiece>> levels);

// Dimension of H^q(X^[k]); zero for absent levels or degrees.
Index stratum_dim(const StratumSpaces& spaces, int k, int q);

// Dimension of the (p, q-p) Hodge piece of H^q(X^[k]).
Index stratum_hodge_dim(const StratumSpaces& spaces, int k, int q, int p);

// The stratum complex: restriction maps rest[(k,q)]: H^q(X^[k]) → H^q(X^[k+1])
// and Gysin maps gysin[(k,q)]: H^q(X^[k]) → H^{q+2}(X^[k-1]) (k ≥ 2; the
// implicit Tate twist is bookkeeping only). Absent maps are zero.
struct StrataComplexData {
  StratumSpaces spaces;
  std::map<std::pair<int, int>, Mat> rest;
  std::map<std::pair<int, int>, Mat> gysin;
};

// Validates shapes against `spaces` and that Rest∘Rest = 0 and Gy∘Gy = 0
// exactly; throws PreconditionError otherwise. Anti-commutativity of the
// mixed squares is NOT required here — that is validate_strata's question.
StrataComplexData strata_complex_data(StratumSpaces spaces,
                                      std::map<std::pair<int, int>, Mat> rest,
                                      std::map<std::pair<int, int>, Mat> gysin);

// The stored map or a correctly shaped zero matrix.
Mat rest_matrix(const StrataComplexData& data, int k, int q);
Mat gysin_matrix(const StrataComplexData& data, int k, int q);

// Result of the anti-commutativity scan: on failure, `square` holds the
// source (k, q) of the first bad square and `residual` the nonzero matrix
// Rest∘Gy + Gy∘Rest on it.
struct StrataVerdict {
  bool ok = true;
  std::optional<std::pair<int, int>> square;
  Mat residual;
  std::string reason;
};

StrataVerdict validate_strata(const StrataComplexData& data);

// One cell of the first page, with the contributing strata recorded:
// E₁^{a,b}(i) = ⊕_{q ≥ max(0,b)} H^{i-2q+b, a+b}(X^[2q+1-b]).
struct E1Cell {
  Index dim = 0;
  struct Source {
    int q;        // the summation index
    int level;    // 2q + 1 - b
    int p;        // first Hodge index i - 2q + b
    int hodge_q;  // second Hodge index a + b
    Index dim;
  };
  std::vector<Source> sources;
};

struct E1Page {
  int i = 0;
  std::map<std::pair<int, int>, E1Cell> cells;  // (a, b) → nonzero cells
};

// Requires a Hodge grading on every nonzero graded piece; throws
// PreconditionError when one is missing.
E1Page e1_page(const StrataComplexData& data, int i);

// Certifies, for every nonzero Hodge piece H^{r,s}(X^[t]), that it
// contributes to exactly one i (namely r + t - 1) and to exactly the t
// values b ∈ {1-t, 3-t, ..., t-1}.
struct E1Audit {
  bool ok = true;
  std::string reason;
};

E1Audit e1_multiplicity_audit(const StrataComplexData& data);

// H^{m-i}(-j): `basis` columns are representatives inside the central spot
// H^{m-i}(X^[i+1]) of the double complex.
struct StrataStringPiece {
  Index dim = 0;
  Mat basis;
};

struct StrataStringReport {
  int m = 0;
  // (i, j) for 0 ≤ j ≤ i ≤ m; H^{m-i}(-j) carries weight m - i + 2j.
  std::map<std::pair<int, int>, StrataStringPiece> pieces;
  // (i, j) → the matrix of the twisted-identity map piece(i,j) → piece(i,j-1)
  // for j ≥ 1; these realize the string structure.
  std::map<std::pair<int, int>, Mat> n_maps;
};

// For each admitted (i, j): Gysin-direction cohomology at the three spots
// H^{m-i}(X^[i+c]) (c = 0, ±1 around the central level i+1), then
// restriction-direction cohomology of the induced maps at the center.
// Requires validate_strata to pass — without anti-commutativity the induced
// maps are not defined; throws PreconditionError quoting the verdict.
StrataStringReport strata_string_pieces(const StrataComplexData& data, int m);

// Total dimension per weight w = m - i + 2j.
std::map<int, Index> strata_string_weight_dims(const StrataStringReport& report);

// Irreducible surface with a double curve: H⁰(X^[2])_− is one-dimensional,
// H²(X^[1]) = span{[C₁],[C₂]}, Gy(1₋) = η_{C₁} − η_{C₂}, and restriction of
// the curve classes to the double locus carries the stated opposite signs,
// so the squares anti-commute iff c1_sq = −c2_sq. `composite` is the
// obstruction class ((c1_sq + c2_sq)/2)·([C₁] − [C₂]) in the {[C₁],[C₂]}
// coordinates, computed from the matrices rather than the formula.
struct SurfaceDoubleCurve {
  StrataComplexData data;
  Vec composite;
};

SurfaceDoubleCurve surface_double_curve(int c1_sq, int c2_sq);

// Normalization components with their genera, and nodes glueing an ordered
// pair of branches (component indices, possibly equal).
struct NodalCurveLayout {
  std::vector<int> genera;
  std::vector<std::pair<Index, Index>> nodes;
};

// Level 1 from the normalization's cohomology, level 2 from the nodes;
// Rest = signed branch evaluation (first branch +, second −), Gy its adjoint
// (signed point-class insertion). validate_strata passes by construction.
// Throws PreconditionError on out-of-range node incidence or negative genus.
StrataComplexData nodal_curve_strata(const NodalCurveLayout& layout);

}  // namespace hodgekit
