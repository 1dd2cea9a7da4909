#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hodgekit/bigrading.hpp"
#include "hodgekit/deform.hpp"
#include "hodgekit/error.hpp"
#include "hodgekit/examples.hpp"
#include "hodgekit/io.hpp"
#include "hodgekit/limit_period.hpp"
#include "hodgekit/mhs.hpp"
#include "hodgekit/monodromy.hpp"
#include "hodgekit/strata.hpp"

using namespace hodgekit;
using io::Json;

namespace {

NilpotentOrbitData golden_orbit() {
  return genus3_orbit(Genus3Params{Scalar(0), Scalar(Rational(1, 2)), Scalar(0),
                                   Scalar(Rational(1, 3)), Scalar(Rational(1, 5)),
                                   Scalar::i()});
}

Mat cone_sum(const NilpotentOrbitData& orbit) {
  Mat sum = Mat::Zero(orbit.q.matrix.rows(), orbit.q.matrix.cols());
  for (const NilpotentEndomorphism& g : orbit.generators) sum += g.matrix;
  return sum;
}

// A report round-trips: it passes its strict schema, survives print-and-parse
// unchanged, and the reparsed value prints byte-identically.
void check_round_trip(const Json& report) {
  io::validate_report(report);
  const std::string dumped = report.dump(2);
  const Json reparsed = io::parse_text(dumped);
  CHECK(reparsed == report);
  io::validate_report(reparsed);
  CHECK(reparsed.dump(2) == dumped);
}

}  // namespace

TEST_CASE("scalars travel as rational strings or re/im objects") {
  CHECK(io::scalar_from_json(Json("3/2")) == Scalar(Rational(3, 2)));
  CHECK(io::scalar_from_json(Json("-7")) == Scalar(-7));
  CHECK(io::scalar_from_json(Json(5)) == Scalar(5));
  CHECK(io::scalar_from_json(io::parse_text(R"({"re":"1/2","im":-2})")) ==
        Scalar(Rational(1, 2), Rational(-2)));

  CHECK(io::scalar_to_json(Scalar(Rational(3, 2))) == Json("3/2"));
  CHECK(io::scalar_to_json(Scalar(-7)) == Json("-7"));
  const Json complex_form = io::scalar_to_json(Scalar(Rational(0), Rational(1)));
  CHECK(complex_form == io::parse_text(R"({"im":"1","re":"0"})"));
  CHECK(io::scalar_from_json(complex_form) == Scalar::i());

  CHECK_THROWS_AS(io::scalar_from_json(Json("1/0")), ParseError);
  CHECK_THROWS_AS(io::scalar_from_json(Json("a")), ParseError);
  CHECK_THROWS_AS(io::scalar_from_json(Json(1.5)), ParseError);
  CHECK_THROWS_AS(io::scalar_from_json(io::parse_text(R"({"re":"1"})")), ParseError);
  CHECK_THROWS_AS(io::scalar_from_json(io::parse_text(R"({"re":"1","im":"0","x":1})")),
                  ParseError);
}

TEST_CASE("matrices are row-major and must be rectangular") {
  const Mat m = io::matrix_from_json(io::parse_text(R"([["1","2"],["3","1/2"]])"));
  CHECK(m.rows() == 2);
  CHECK(m(1, 1) == Scalar(Rational(1, 2)));
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
  CHECK(io::matrix_from_json(Json::array()).rows() == 0);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_text(R"([["1"],["2","3"]])")),
                  ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(Json("x")), ParseError);

  const Vec v = io::vector_from_json(io::parse_text(R"(["1","0","1/3"])"));
  CHECK(v.size() == 3);
  CHECK(io::vector_from_json(io::vector_to_json(v)) == v);
}

TEST_CASE("problem files parse strictly") {
  const Json mhs_file = io::parse_text(R"({
    "ambient_dim": 2,
    "weight_center": 1,
    "W": {"1": [["1","0"],["0","1"]]},
    "F": {"1": [[{"re":"0","im":"1"},"1"]]},
    "Q": [["0","-1"],["1","0"]],
    "kind": "mhs",
    "metadata": {"note": "elliptic curve"}
  })");
  const io::ProblemFile pf = io::problem_from_json(mhs_file);
  CHECK(pf.ambient_dim == 2);
  CHECK(pf.center == 1);
  REQUIRE(pf.w.has_value());
  REQUIRE(pf.f.has_value());
  REQUIRE(pf.q.has_value());
  CHECK(pf.q->weight_parity == 1);
  const MixedHodgeStructure mhs = io::to_mhs(pf);
  const DeligneBigrading bg = deligne_bigrading(mhs);
  CHECK(bg.dim(1, 0) == 1);
  CHECK(bg.dim(0, 1) == 1);

  // Missing W steps repeat the step below them.
  const io::ProblemFile gaps = io::problem_from_json(io::parse_text(R"({
    "ambient_dim": 2,
    "weight_center": 1,
    "W": {"0": [["1","0"]], "2": [["1","0"],["0","1"]]}
  })"));
  CHECK(gaps.w->at(1) == gaps.w->at(0));

  CHECK_THROWS_WITH_AS(io::problem_from_json(io::parse_text(R"({"ambient_dim": 2, "x": 1})")),
                       doctest::Contains("unknown field"), ParseError);
  CHECK_THROWS_AS(io::problem_from_json(io::parse_text(
                      R"({"ambient_dim": 2, "weight_center": 0, "center": 1})")),
                  ParseError);
  CHECK_THROWS_WITH_AS(
      io::problem_from_json(io::parse_text(R"({"ambient_dim": 2, "N": [["0","1"],["0","0"]]})")),
      doctest::Contains("center"), ParseError);
  CHECK_THROWS_AS(io::problem_from_json(io::parse_text(
                      R"({"ambient_dim": 2, "center": 1, "N": [["0","1"],["0","0"]],
                          "cone": [[["0","1"],["0","0"]]]})")),
                  ParseError);
  CHECK_THROWS_AS(io::problem_from_json(io::parse_text(
                      R"({"ambient_dim": 2, "weight_center": 1, "kind": "orbit"})")),
                  ParseError);
  CHECK_THROWS_AS(io::problem_from_json(io::parse_text(
                      R"({"ambient_dim": 2, "Q": [["0","-1"],["1","0"]]})")),
                  ParseError);
  // Well-formed JSON whose values break a mathematical invariant is a
  // precondition violation, not a parse error.
  CHECK_THROWS_AS(io::problem_from_json(io::parse_text(R"({
    "ambient_dim": 2, "weight_center": 1,
    "W": {"1": [["1","0"]]}
  })")),
                  PreconditionError);
}

TEST_CASE("orbit files round-trip through their own schema") {
  const NilpotentOrbitData orbit = golden_orbit();
  const Json file = io::orbit_to_json(orbit, Json{{"fixture", "genus3"}});
  const io::ProblemFile pf = io::problem_from_json(file);
  const NilpotentOrbitData back = io::to_orbit(pf);
  CHECK(back.f == orbit.f);
  CHECK(back.center == orbit.center);
  REQUIRE(back.generators.size() == orbit.generators.size());
  for (std::size_t k = 0; k < orbit.generators.size(); ++k)
    CHECK(is_zero(Mat(back.generators[k].matrix - orbit.generators[k].matrix)));
  CHECK(is_zero(Mat(back.q.matrix - orbit.q.matrix)));
  CHECK(io::orbit_to_json(back, Json{{"fixture", "genus3"}}).dump(2) == file.dump(2));

  // A recorded weight filtration is cross-checked against the cone.
  Json with_w = file;
  with_w["W"] = Json::object();
  with_w["W"]["1"] = io::basis_to_json(Subspace::full(6));
  CHECK_THROWS_WITH_AS(io::problem_from_json(with_w), doctest::Contains("match"),
                       PreconditionError);
  with_w["W"] = Json::object();
  const WeightFiltration w = weight_filtration(cone_sum(orbit), 1);
  for (int k = w.lowest(); k <= w.highest(); ++k)
    with_w["W"][std::to_string(k)] = io::basis_to_json(w.at(k));
  CHECK(io::problem_from_json(with_w).w.has_value());
}

TEST_CASE("strata and deformation files round-trip") {
  const StrataComplexData curve = genus3_strata();
  const Json file = io::strata_to_json(curve, Json{{"fixture", "genus3-strata"}});
  const StrataComplexData back = io::strata_from_json(file);
  CHECK(back.spaces.dim_x == curve.spaces.dim_x);
  CHECK(stratum_dim(back.spaces, 1, 1) == stratum_dim(curve.spaces, 1, 1));
  CHECK(stratum_hodge_dim(back.spaces, 1, 1, 0) == stratum_hodge_dim(curve.spaces, 1, 1, 0));
  CHECK(validate_strata(back).ok);
  CHECK(io::strata_to_json(back, Json{{"fixture", "genus3-strata"}}).dump(2) == file.dump(2));
  CHECK(strata_string_weight_dims(strata_string_pieces(back, 1)) ==
        strata_string_weight_dims(strata_string_pieces(curve, 1)));

  CHECK_THROWS_WITH_AS(io::strata_from_json(io::parse_text(R"({"n": 1})")),
                       doctest::Contains("levels"), ParseError);
  Json dup = file;
  dup["levels"].push_back(dup["levels"][0]);
  CHECK_THROWS_WITH_AS(io::strata_from_json(dup), doctest::Contains("duplicate"),
                       ParseError);

  const DeformationData d = deformation_data(
      4, {"D1", "D2", "D3"},
      io::matrix_from_json(io::parse_text(R"([["1","0","0","1"],["0","1","0","1"],["0","0","1","1"]])")),
      io::matrix_from_json(io::parse_text(R"([["1","1","1"]])")));
  const Json dfile = io::deform_to_json(d);
  const DeformationData dback = io::deform_from_json(dfile);
  CHECK(dback.ext_dim == 4);
  CHECK(dback.components == d.components);
  CHECK(is_zero(Mat(dback.localize - d.localize)));
  REQUIRE(dback.delta.has_value());
  CHECK(is_zero(Mat(*dback.delta - *d.delta)));
  CHECK(io::deform_to_json(dback).dump(2) == dfile.dump(2));

  Json no_delta = dfile;
  no_delta["delta"] = Json();
  CHECK(!io::deform_from_json(no_delta).delta.has_value());
  Json dup_label = dfile;
  dup_label["components"] = std::vector<std::string>{"D1", "D1", "D2"};
  CHECK_THROWS_WITH_AS(io::deform_from_json(dup_label), doctest::Contains("duplicate"),
                       ParseError);
}

TEST_CASE("genus-3 parameter files are strict") {
  const Json file = io::parse_text(
      R"({"a11":"0","a12":"1/2","a22":"0","b1":"1/3","b2":"1/5","c":{"re":"0","im":"1"}})");
  const Genus3Params p = io::genus3_params_from_json(file);
  CHECK(p.c == Scalar::i());
  CHECK(io::genus3_params_to_json(p) == file);
  Json missing = file;
  missing.erase("c");
  CHECK_THROWS_AS(io::genus3_params_from_json(missing), ParseError);
  Json extra = file;
  extra["d"] = "1";
  CHECK_THROWS_AS(io::genus3_params_from_json(extra), ParseError);
}

TEST_CASE("every report kind round-trips through its strict schema") {
  const NilpotentOrbitData orbit = golden_orbit();
  const Mat n = cone_sum(orbit);
  const WeightFiltration w = weight_filtration(n, 1);
  const MixedHodgeStructure mhs(w, orbit.f, orbit.q);
  const DeligneBigrading bg = deligne_bigrading(mhs);
  const BoundaryFlag flag = reduced_lpm(orbit, n);
  const StrataComplexData curve = genus3_strata();

  check_round_trip(io::weight_filtration_report(w));
  check_round_trip(io::deligne_report(bg));
  check_round_trip(io::rsplit_report(is_r_split(mhs), deligne_bigrading(r_split(mhs))));
  check_round_trip(
      io::lmhs_report(nilpotent_orbit_check(orbit), cone_weight_independence(orbit, 4), w));
  check_round_trip(
      io::limit_period_report(flag, orbit_invariants(flag), lie_quadrants(orbit, n)));
  check_round_trip(io::nstrings_report(n_strings(orbit, n)));
  check_round_trip(io::strata_validate_report(validate_strata(curve)));
  check_round_trip(
      io::strata_validate_report(validate_strata(surface_double_curve(1, 1).data)));
  check_round_trip(io::e1_report(e1_page(curve, 1)));
  check_round_trip(io::strata_strings_report_json(strata_string_pieces(curve, 1)));

  const DeformationData d = deformation_data(
      3, {"D1", "D2", "D3"}, Mat::Identity(3, 3),
      io::matrix_from_json(io::parse_text(R"([["1","1","1"]])")));
  check_round_trip(io::deform_strata_report(d, strata_classification(d),
                                            exactness_report(d), true, true));
  check_round_trip(io::cone_report(smoothing_cone(d), true));
  check_round_trip(io::p2_report(classify_p2_line(d), d.components));

  // Tampering in either direction must be caught.
  Json report = io::nstrings_report(n_strings(orbit, n));
  report["extra"] = 1;
  CHECK_THROWS_WITH_AS(io::validate_report(report), doctest::Contains("unknown"),
                       ParseError);
  report.erase("extra");
  report.erase("center");
  CHECK_THROWS_WITH_AS(io::validate_report(report), doctest::Contains("missing"),
                       ParseError);
  CHECK_THROWS_AS(io::validate_report(Json{{"kind", "nonsense"}}), ParseError);
}

TEST_CASE("text rendering is deterministic and substantive") {
  const NilpotentOrbitData orbit = golden_orbit();
  const Mat n = cone_sum(orbit);

  std::ostringstream first, second;
  io::render_text(io::nstrings_report(n_strings(orbit, n)), first);
  io::render_text(io::nstrings_report(n_strings(orbit, n)), second);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("base weight 0, length 1, multiplicity 2") != std::string::npos);
  CHECK(first.str().find("weight dims: 0:2 1:2 2:2") != std::string::npos);

  std::ostringstream verdict;
  io::render_text(io::strata_validate_report(validate_strata(surface_double_curve(1, 1).data)),
                  verdict);
  CHECK(verdict.str().find("FAIL at square (k=2, q=0)") != std::string::npos);
  CHECK(verdict.str().find("residual: [2]") != std::string::npos);

  std::ostringstream quadrants;
  const BoundaryFlag flag = reduced_lpm(orbit, n);
  io::render_text(
      io::limit_period_report(flag, orbit_invariants(flag), lie_quadrants(orbit, n)),
      quadrants);
  CHECK(quadrants.str().find("kernel 5, transported 1, cokernel 5, stabilizer 10") !=
        std::string::npos);
}
