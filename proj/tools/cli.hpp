// Command-line front end. Subcommands: gen, eval, mc, sweep, bounds,
// multisample-curve. Single evaluations print one JSON object per line;
// sweeps and curves write CSV with a header row.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lastsuccess::cli {

/// Runs the CLI on `args` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lastsuccess::cli
