// Batch front-end: parse problem files, dispatch to operations, emit reports.
//
// Provides run_cli, the whole command-line program as a testable function.
// Subcommands: weight-filtration, deligne, rsplit, lmhs-check, limit-period,
// nstrings, strata {validate, e1, nstrings, surface}, deform {strata, cone,
// classify-p2}, example {genus3, genus2, genus3-strata}. Analysis reports
// honor --format text|json (default text); generator subcommands (example *,
// strata surface) always emit the JSON problem file so the output stays
// consumable by the other subcommands.
//
// Exit codes: 0 success / domain check passed; 1 domain check failed (the
// report carries the witness); 2 parse or schema error (including command
// line misuse); 3 precondition violation.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hodgekit {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hodgekit
