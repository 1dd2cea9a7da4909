#include "hodgekit/cli.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hodgekit/bigrading.hpp"
#include "hodgekit/error.hpp"
#include "hodgekit/examples.hpp"
#include "hodgekit/io.hpp"
#include "hodgekit/limit_period.hpp"
#include "hodgekit/monodromy.hpp"
#include "hodgekit/strata.hpp"

namespace hodgekit {

namespace {

struct Options {
  std::string input;
  std::string format = "text";
  long long seed = 0;
  int i = 0;
  int m = 0;
  int c1_sq = 0;
  int c2_sq = 0;
  std::string genus2_case;
  std::string params_path;
};

// Every emitted report is pushed back through its own strict schema before
// printing; a report the parser rejects is a bug, not an output.
void emit(const io::Json& report, const Options& opt, std::ostream& out) {
  io::validate_report(report);
  if (opt.format == "json")
    out << report.dump(2) << "\n";
  else
    io::render_text(report, out);
}

void emit_file(const io::Json& file, std::ostream& out) { out << file.dump(2) << "\n"; }

Mat cone_sum(const NilpotentOrbitData& orbit) {
  Mat sum = Mat::Zero(orbit.q.matrix.rows(), orbit.q.matrix.cols());
  for (const NilpotentEndomorphism& g : orbit.generators) sum += g.matrix;
  return sum;
}

int cmd_weight_filtration(const Options& opt, std::ostream& out) {
  const io::ProblemFile pf = io::problem_from_json(io::load_file(opt.input));
  if (pf.cone.empty())
    throw ParseError("weight-filtration needs \"N\" or \"cone\"");
  Mat sum = Mat::Zero(pf.ambient_dim, pf.ambient_dim);
  for (const Mat& g : pf.cone) sum += g;
  emit(io::weight_filtration_report(weight_filtration(sum, *pf.center)), opt, out);
  return 0;
}

int cmd_deligne(const Options& opt, std::ostream& out) {
  const MixedHodgeStructure mhs = io::to_mhs(io::problem_from_json(io::load_file(opt.input)));
  emit(io::deligne_report(deligne_bigrading(mhs)), opt, out);
  return 0;
}

int cmd_rsplit(const Options& opt, std::ostream& out) {
  const MixedHodgeStructure mhs = io::to_mhs(io::problem_from_json(io::load_file(opt.input)));
  const MixedHodgeStructure split = r_split(mhs);
  emit(io::rsplit_report(is_r_split(mhs), deligne_bigrading(split)), opt, out);
  return 0;
}

int cmd_lmhs_check(const Options& opt, std::ostream& out) {
  const NilpotentOrbitData orbit =
      io::to_orbit(io::problem_from_json(io::load_file(opt.input)));
  const OrbitVerdict verdict = nilpotent_orbit_check(orbit);
  const bool independent =
      cone_weight_independence(orbit, 8, static_cast<unsigned>(opt.seed));
  const io::Json report = io::lmhs_report(
      verdict, independent, weight_filtration(cone_sum(orbit), orbit.center));
  emit(report, opt, out);
  return report.at("ok").get<bool>() ? 0 : 1;
}

int cmd_limit_period(const Options& opt, std::ostream& out) {
  const NilpotentOrbitData orbit =
      io::to_orbit(io::problem_from_json(io::load_file(opt.input)));
  const Mat n = cone_sum(orbit);
  const BoundaryFlag flag = reduced_lpm(orbit, n);
  emit(io::limit_period_report(flag, orbit_invariants(flag), lie_quadrants(orbit, n)),
       opt, out);
  return 0;
}

int cmd_nstrings(const Options& opt, std::ostream& out) {
  const NilpotentOrbitData orbit =
      io::to_orbit(io::problem_from_json(io::load_file(opt.input)));
  emit(io::nstrings_report(n_strings(orbit, cone_sum(orbit))), opt, out);
  return 0;
}

int cmd_strata_validate(const Options& opt, std::ostream& out) {
  const StrataVerdict verdict =
      validate_strata(io::strata_from_json(io::load_file(opt.input)));
  emit(io::strata_validate_report(verdict), opt, out);
  return verdict.ok ? 0 : 1;
}

int cmd_strata_e1(const Options& opt, std::ostream& out) {
  const StrataComplexData data = io::strata_from_json(io::load_file(opt.input));
  emit(io::e1_report(e1_page(data, opt.i)), opt, out);
  return 0;
}

int cmd_strata_nstrings(const Options& opt, std::ostream& out) {
  const StrataComplexData data = io::strata_from_json(io::load_file(opt.input));
  emit(io::strata_strings_report_json(strata_string_pieces(data, opt.m)), opt, out);
  return 0;
}

int cmd_strata_surface(const Options& opt, std::ostream& out) {
  const SurfaceDoubleCurve model = surface_double_curve(opt.c1_sq, opt.c2_sq);
  const io::Json metadata{{"c1_sq", opt.c1_sq},
                          {"c2_sq", opt.c2_sq},
                          {"composite", io::vector_to_json(model.composite)},
                          {"fixture", "surface-double-curve"}};
  emit_file(io::strata_to_json(model.data, metadata), out);
  return 0;
}

int cmd_deform_strata(const Options& opt, std::ostream& out) {
  const DeformationData d = io::deform_from_json(io::load_file(opt.input));
  std::optional<ExactnessReport> exactness;
  if (d.delta) exactness = exactness_report(d);
  emit(io::deform_strata_report(d, strata_classification(d), exactness,
                                smoothable_first_order(d), independent_smoothing(d)),
       opt, out);
  return 0;
}

int cmd_deform_cone(const Options& opt, std::ostream& out) {
  const DeformationData d = io::deform_from_json(io::load_file(opt.input));
  emit(io::cone_report(smoothing_cone(d), independent_smoothing(d)), opt, out);
  return 0;
}

int cmd_deform_classify_p2(const Options& opt, std::ostream& out) {
  const DeformationData d = io::deform_from_json(io::load_file(opt.input));
  emit(io::p2_report(classify_p2_line(d), d.components), opt, out);
  return 0;
}

int cmd_example_genus3(const Options& opt, std::ostream& out) {
  const Genus3Params params =
      opt.params_path.empty()
          ? Genus3Params{Scalar(0),
                         Scalar(Rational(1, 2)),
                         Scalar(0),
                         Scalar(Rational(1, 3)),
                         Scalar(Rational(1, 5)),
                         Scalar::i()}
          : io::genus3_params_from_json(io::load_file(opt.params_path));
  const io::Json metadata{{"fixture", "genus3"},
                          {"params", io::genus3_params_to_json(params)}};
  emit_file(io::orbit_to_json(genus3_orbit(params), metadata), out);
  return 0;
}

int cmd_example_genus2(const Options& opt, std::ostream& out) {
  const Genus2Fixture fixture =
      genus2_orbit(opt.genus2_case == "i" ? Genus2Case::i : Genus2Case::ii);
  const io::Json metadata{
      {"case", opt.genus2_case},
      {"expected_residual_pattern", io::matrix_to_json(fixture.expected_residual_pattern)},
      {"fixture", "genus2"}};
  emit_file(io::orbit_to_json(fixture.orbit, metadata), out);
  return 0;
}

int cmd_example_genus3_strata(std::ostream& out) {
  emit_file(io::strata_to_json(genus3_strata(), io::Json{{"fixture", "genus3-strata"}}),
            out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact linear-algebra invariants of limiting mixed Hodge structures",
               "hodgekit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("--input", opt.input, "problem file (JSON)")->required();
    cmd->add_option("--format", opt.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", opt.seed, "seed for randomized spot-checks");
    return cmd;
  };

  CLI::App* wf = add_common(
      app.add_subcommand("weight-filtration",
                         "monodromy weight filtration of the nilpotent cone"),
      true);
  CLI::App* deligne = add_common(
      app.add_subcommand("deligne", "Deligne bigrading of a mixed Hodge structure"),
      true);
  CLI::App* rsplit = add_common(
      app.add_subcommand("rsplit", "canonical R-split structure of a mixed Hodge structure"),
      true);
  CLI::App* lmhs = add_common(
      app.add_subcommand("lmhs-check",
                         "is the orbit a polarized limiting mixed Hodge structure?"),
      true);
  CLI::App* lp = add_common(
      app.add_subcommand("limit-period",
                         "boundary flag, orbit invariants, and tangent quadrants"),
      true);
  CLI::App* ns = add_common(
      app.add_subcommand("nstrings", "string decomposition of the limit cohomology"),
      true);

  CLI::App* strata = app.add_subcommand("strata", "stratum complex calculus");
  strata->require_subcommand(1);
  CLI::App* sv = add_common(
      strata->add_subcommand("validate", "do restriction and Gysin maps anti-commute?"),
      true);
  CLI::App* se1 = add_common(
      strata->add_subcommand("e1", "first page of the weight spectral sequence"), true);
  se1->add_option("--i", opt.i, "total cohomological degree")->required();
  CLI::App* sns = add_common(
      strata->add_subcommand("nstrings", "string decomposition from the strata"), true);
  sns->add_option("--m", opt.m, "central weight")->required();
  CLI::App* ssf = add_common(
      strata->add_subcommand("surface",
                             "surface-with-double-curve fixture (emits a strata file)"),
      false);
  ssf->add_option("--c1sq", opt.c1_sq, "self-intersection of the curve in one component")
      ->required();
  ssf->add_option("--c2sq", opt.c2_sq, "self-intersection in the other component")
      ->required();

  CLI::App* deform = app.add_subcommand("deform", "first-order deformation calculus");
  deform->require_subcommand(1);
  CLI::App* ds = add_common(
      deform->add_subcommand("strata", "smoothing and equisingular strata"), true);
  CLI::App* dc =
      add_common(deform->add_subcommand("cone", "the open smoothing cone"), true);
  CLI::App* dp2 = add_common(
      deform->add_subcommand("classify-p2", "line classification for three components"),
      true);

  CLI::App* example =
      app.add_subcommand("example", "built-in fixtures (emit problem files)");
  example->require_subcommand(1);
  CLI::App* eg3 = add_common(
      example->add_subcommand("genus3", "two-parameter genus-3 curve degeneration"),
      false);
  eg3->add_option("--params", opt.params_path,
                  "parameter file; omitted means the golden fixture");
  CLI::App* eg2 = add_common(
      example->add_subcommand("genus2", "one- and two-cycle genus-2 degenerations"),
      false);
  eg2->add_option("--case", opt.genus2_case, "which degeneration: i or ii")
      ->required()
      ->check(CLI::IsMember({"i", "ii"}));
  CLI::App* eg3s = add_common(
      example->add_subcommand("genus3-strata",
                              "strata file of the two-node genus-3 curve"),
      false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }

    if (wf->parsed()) return cmd_weight_filtration(opt, out);
    if (deligne->parsed()) return cmd_deligne(opt, out);
    if (rsplit->parsed()) return cmd_rsplit(opt, out);
    if (lmhs->parsed()) return cmd_lmhs_check(opt, out);
    if (lp->parsed()) return cmd_limit_period(opt, out);
    if (ns->parsed()) return cmd_nstrings(opt, out);
    if (strata->parsed()) {
      if (sv->parsed()) return cmd_strata_validate(opt, out);
      if (se1->parsed()) return cmd_strata_e1(opt, out);
      if (sns->parsed()) return cmd_strata_nstrings(opt, out);
      if (ssf->parsed()) return cmd_strata_surface(opt, out);
    }
    if (deform->parsed()) {
      if (ds->parsed()) return cmd_deform_strata(opt, out);
      if (dc->parsed()) return cmd_deform_cone(opt, out);
      if (dp2->parsed()) return cmd_deform_classify_p2(opt, out);
    }
    if (example->parsed()) {
      if (eg3->parsed()) return cmd_example_genus3(opt, out);
      if (eg2->parsed()) return cmd_example_genus2(opt, out);
      if (eg3s->parsed()) return cmd_example_genus3_strata(out);
    }
    err << "usage error: no subcommand selected\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hodgekit
