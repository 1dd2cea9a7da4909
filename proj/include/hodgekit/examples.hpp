// Golden degeneration fixtures: nodal-curve nilpotent orbits with free
// rational parameters in place of transcendental periods, their recovered
// extension data, and the matching stratum complex, wired so that every
// other module can be cross-checked on the same geometry.
//
// Provides:
//  - genus3_orbit / genus3_extension_data: a genus-3 curve acquiring two
//    nodes (normalization of genus 1); the period matrix carries six
//    parameters, of which (c, b1, b2, a12) are invariants of the orbit and
//    (a11, a22) shift under the orbit's own flow
//  - genus2_orbit: a genus-2 curve with two or three vanishing cycles, with
//    the published surviving-direction pattern attached
//  - period_direction / period_residual_pattern: symmetric period-matrix
//    directions and the mask of those surviving in the residual tangent
//    quotient
//  - genus3_strata: the stratum complex of the same nodal curve, for the
//    strata-route versus orbit-route comparison
#pragma once

#include "hodgekit/matrix.hpp"
#include "hodgekit/monodromy.hpp"
#include "hodgekit/scalar.hpp"
#include "hodgekit/strata.hpp"

namespace hodgekit {

// Period-matrix entries of the degenerating genus-3 curve, constants of the
// log-expansion at the puncture: diagonal a11/a22 sit over the nodes, c is
// the period of the elliptic normalization, b1/b2 connect the two layers and
// a12 couples the nodes. The only inequality is Im(c) > 0.
struct Genus3Params {
  Scalar a11, a12, a22, b1, b2, c;
};

// Nilpotent orbit on ℚ⁶ with symplectic basis (δ1,δ2,δ3,γ1,γ2,γ3): cone
// generators N_i: γ_i ↦ δ_i (i = 1,2), center 1, standard polarization, and
// F¹ spanned by the period columns [Ω ; I] with
// Ω = [[a11,a12,b1],[a12,a22,b2],[b1,b2,c]]. Throws PreconditionError unless
// Im(c) > 0.
NilpotentOrbitData genus3_orbit(const Genus3Params& p);

// The parameters read back off an orbit, split by how they transform along
// the orbit's own directions exp(z1 N1 + z2 N2).
struct Genus3ExtensionData {
  Scalar c, b1, b2, a12;  // invariant layer: extension data of the limit
  Scalar a11, a22;        // dependent layer: shifted by z1 and z2
};

// Requires the exact fixture shape produced by genus3_orbit (up to the
// choice of parameters): standard polarization and cone, center 1, and a
// graph filtration with symmetric period matrix; PreconditionError otherwise.
Genus3ExtensionData genus3_extension_data(const NilpotentOrbitData& orbit);

// Genus-2 degenerations: (i) two disjoint vanishing cycles δ1, δ2;
// (ii) additionally the cycle δ1 + δ2, whose rank-one generator completes
// the cone so that no residual direction survives.
enum class Genus2Case { i, ii };

struct Genus2Fixture {
  NilpotentOrbitData orbit;
  // 0/1 mask over symmetric period directions expected to survive in the
  // residual tangent quotient: off-diagonal only for case (i), none for (ii).
  Mat expected_residual_pattern;
};

Genus2Fixture genus2_orbit(Genus2Case which);

// The infinitesimal isometry moving the (i,j) entry of a genus-g period
// matrix: γ_j ↦ δ_i and γ_i ↦ δ_j, zero on the δ block.
Mat period_direction(Index genus, Index i, Index j);

// The g×g symmetric 0/1 mask of period directions with nonzero class in the
// residual tangent quotient of the orbit. Requires a weight-one orbit whose
// F¹ is a dimension-g graph subspace; the coordinates of each direction are
// solved exactly against the tangent basis (failure is an InternalError,
// since every symmetric direction is horizontal).
Mat period_residual_pattern(const NilpotentOrbitData& orbit);

// Stratum complex of the same degenerate genus-3 curve: irreducible, two
// nodes, normalization of genus 1.
StrataComplexData genus3_strata();

}  // namespace hodgekit
