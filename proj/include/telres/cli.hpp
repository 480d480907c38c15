// cli.hpp — Command-line front end tying the detection pipelines together.

#pragma once

#include <iosfwd>

namespace telres {

// Parses argv and runs the requested subcommand. Reports go to `out` as
// JSON; a one-line human summary (or a single-line `error: <kind>: ...`)
// goes to `err`. Returns the process exit code: 0 unless a usage, parse,
// or validation error occurred; Inconclusive verdicts still return 0.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace telres
