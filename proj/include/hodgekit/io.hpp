// JSON problem files and reports: strict schemas, deterministic output.
//
// Provides:
//  - scalar/matrix serialization: a rational is the string "p/q" (q > 0,
//    gcd(p,q) = 1), a non-real scalar the object {"re","im"}, a matrix a
//    row-major array of rows; integers are accepted on input for convenience
//  - ProblemFile: the common structure-description file — ambient dimension,
//    optional weight and Hodge filtrations, polarization, and nilpotent cone
//    — with converters to MixedHodgeStructure and NilpotentOrbitData
//  - strata_from_json / deform_from_json: the stratum-complex and
//    deformation-data files
//  - report builders for every CLI analysis, one JSON object each with a
//    "kind" discriminator (except the limit-period report, whose three keys
//    are fixed by the interface), plus validate_report, the strict parser
//    every emitted report must round-trip through
//  - render_text: the deterministic human-readable rendering of a report
//
// Parsing distinguishes two failure modes: structural problems (wrong type,
// unknown field, malformed scalar) raise ParseError, while values that are
// well-formed JSON but violate a mathematical invariant (a filtration that
// does not increase, a degenerate polarization) surface as PreconditionError
// from the domain constructors.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/bigrading.hpp"
#include "hodgekit/deform.hpp"
#include "hodgekit/examples.hpp"
#include "hodgekit/limit_period.hpp"
#include "hodgekit/matrix.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/monodromy.hpp"
#include "hodgekit/scalar.hpp"
#include "hodgekit/strata.hpp"
#include "hodgekit/subspace.hpp"
#include "json.hpp"

namespace hodgekit::io {

using Json = nlohmann::json;

// --- scalars, matrices, bases ---------------------------------------------
//
// Rational wire strings are to_string / parse_rational from scalar.hpp.

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json matrix_to_json(const Mat& m);   // array of rows
Mat matrix_from_json(const Json& j); // [] is the 0 x 0 matrix

Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);

// A subspace travels as the list of its canonical basis columns.
Json basis_to_json(const Subspace& s);
Subspace basis_from_json(const Json& j, Index ambient);

// nlohmann parse errors rewrapped as ParseError.
Json parse_text(const std::string& text);
Json load_file(const std::string& path);

// --- problem files ----------------------------------------------------------

// The structure-description file. Field "W" requires "weight_center"; "N" is
// shorthand for a one-generator "cone"; "kind" ("mhs" or "orbit") and
// free-form "metadata" are optional. When a file carries both an explicit
// weight filtration and a cone, the two must agree.
struct ProblemFile {
  Index ambient_dim = 0;
  std::optional<int> center;  // "weight_center" and/or "center"
  std::optional<WeightFiltration> w;
  std::optional<HodgeFiltration> f;
  std::optional<PolarizationForm> q;
  std::vector<Mat> cone;  // empty when neither "N" nor "cone" is given
};

ProblemFile problem_from_json(const Json& j);

// Weight filtration taken from "W" or computed from the cone at the center;
// ParseError when the file determines neither.
MixedHodgeStructure to_mhs(const ProblemFile& p);

// Requires "F", a nonempty cone, "center" and "Q"; ParseError when missing.
NilpotentOrbitData to_orbit(const ProblemFile& p);

// Emits a file to_orbit accepts back; non-null metadata is attached.
Json orbit_to_json(const NilpotentOrbitData& orbit, const Json& metadata = Json());

StrataComplexData strata_from_json(const Json& j);
Json strata_to_json(const StrataComplexData& data, const Json& metadata = Json());

DeformationData deform_from_json(const Json& j);
Json deform_to_json(const DeformationData& d, const Json& metadata = Json());

// Parameter file for the genus-3 fixture: exactly the six scalars
// {"a11","a12","a22","b1","b2","c"}.
Genus3Params genus3_params_from_json(const Json& j);
Json genus3_params_to_json(const Genus3Params& p);

// --- reports ----------------------------------------------------------------

Json weight_filtration_report(const WeightFiltration& w);
Json deligne_report(const DeligneBigrading& bg);
Json rsplit_report(bool already_r_split, const DeligneBigrading& split_bg);
Json lmhs_report(const OrbitVerdict& verdict, bool cone_weight_independent,
                 const WeightFiltration& w);
Json limit_period_report(const BoundaryFlag& flag,
                         const std::map<std::pair<int, int>, Index>& invariants,
                         const QuadrantReport& quadrants);
Json nstrings_report(const NStringDiagram& diagram);
Json strata_validate_report(const StrataVerdict& verdict);
Json e1_report(const E1Page& page);
Json strata_strings_report_json(const StrataStringReport& report);
Json deform_strata_report(const DeformationData& d,
                          const std::vector<SmoothingStratum>& strata,
                          const std::optional<ExactnessReport>& exactness,
                          bool smoothable, bool independent);
Json cone_report(const SmoothingCone& cone, bool independent);
Json p2_report(const P2LineReport& report, const std::vector<std::string>& components);

// Strict schema check for every report emitted above (the limit-period
// report is recognized by its fixed keys, the rest by "kind").
// ParseError on any deviation.
void validate_report(const Json& report);

// Deterministic text rendering; accepts exactly what validate_report does.
void render_text(const Json& report, std::ostream& out);

}  // namespace hodgekit::io
