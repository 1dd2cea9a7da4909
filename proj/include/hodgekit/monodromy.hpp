// Nilpotent endomorphisms and their weight filtrations.
//
// The central object is the monodromy weight filtration W(N) of a nilpotent
// endomorphism N: the unique increasing filtration, centered at a chosen
// weight m, with N·W_k ⊆ W_{k-2} and N^k : Gr_{m+k} ≅ Gr_{m-k}.  On top of it
// this header offers the limiting-mixed-Hodge-structure test for a nilpotent
// cone acting on a Hodge filtration (purity of the graded pieces plus
// positivity of the primitive-part polarizations), the decomposition of the
// associated graded into N-strings, cone-interior independence of W, and
// detection of exp(zN)-equivalent filtrations.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/mhs.hpp"

namespace hodgekit {

// A nilpotent matrix with real rational entries; index is the smallest k
// with matrix^k = 0.
struct NilpotentEndomorphism {
  Mat matrix;
  Index ambient_dim;
  int index;
};

// Validates squareness, realness, and nilpotency.
NilpotentEndomorphism nilpotent_endomorphism(const Mat& m);

// Data of a nilpotent orbit: a Hodge filtration together with the cone
// spanned by commuting nilpotent generators, a weight center, and a
// polarization form.  The factory validates:
//  - generators are nilpotent, real, linearly independent, and commute
//  - each generator shifts the filtration: N·F^p ⊆ F^{p-1}
//  - each generator is an infinitesimal isometry: N^T Q + Q N = 0
// A single zero generator is allowed as the trivial cone of a pure
// structure; it is the one exception to linear independence.
struct NilpotentOrbitData {
  HodgeFiltration f;
  std::vector<NilpotentEndomorphism> generators;
  int center;
  PolarizationForm q;
};

NilpotentOrbitData nilpotent_orbit_data(const HodgeFiltration& f,
                                        const std::vector<Mat>& generators, int center,
                                        const PolarizationForm& q);

WeightFiltration weight_filtration(const NilpotentEndomorphism& n, int center);
WeightFiltration weight_filtration(const Mat& n, int center);

struct OrbitVerdict {
  bool ok;
  std::string reason;  // empty when ok; otherwise the first violated clause
};

// Is (W(N), F) a polarized limiting mixed Hodge structure?  Passes iff the
// filtration induced by F on every Gr_{m+k} is pure of weight m+k and every
// primitive part ker(N^{k+1}) ⊆ Gr_{m+k} is polarized by
// Q_k(u, v) = (-1)^k Q(N^k u, v).  N must lie in the open cone: a positive
// combination of all generators (PreconditionError otherwise).
OrbitVerdict lmhs_check(const NilpotentOrbitData& orbit, const Mat& n);

// Same check at the sum of the generators, the canonical interior point.
// Being a nilpotent orbit (exp(zN)·F horizontal and in the period domain for
// Im z large) is equivalent to the limiting-MHS conditions, so the check is
// certified through that equivalence rather than by sampling exp(zN)·F.
OrbitVerdict nilpotent_orbit_check(const NilpotentOrbitData& orbit);

// One N-string: a piece H pure of weight base_weight whose Tate twists
// H(-j), j = 0..length, fill the primitive N-orbit from weight
// base_weight + 2·length down.  chain[j] holds an ambient-space basis of the
// lift of H(-j), arranged so that N·chain[j] = chain[j-1] columnwise.
struct NString {
  int base_weight;
  int length;
  std::map<std::pair<int, int>, Index> hodge;  // Hodge numbers of H
  std::vector<Mat> chain;
};

struct NStringDiagram {
  int center;
  std::vector<NString> strings;  // longest strings first
};

// Primitive decomposition of ⊕ Gr_k into N-strings; requires a passing
// lmhs_check (PreconditionError otherwise).
NStringDiagram n_strings(const NilpotentOrbitData& orbit, const Mat& n);

// Spot-check that weight_filtration is constant on the open cone: compares
// the filtration at `samples` random rational interior points against the
// sum of generators.  Exactness makes each comparison a proof for that point;
// the sweep is a sample, not a theorem.
bool cone_weight_independence(const NilpotentOrbitData& orbit, int samples,
                              unsigned seed = 0);

// The z with exp(zN)·F = F2, if one exists.  The solution set of the induced
// polynomial system is empty, a single point, or all of the field (when every
// N^j·F^p ⊆ F^p); the last case reports z = 0.
std::optional<Scalar> equivalent_orbits(const HodgeFiltration& f, const HodgeFiltration& f2,
                                        const Mat& n);

}  // namespace hodgekit
