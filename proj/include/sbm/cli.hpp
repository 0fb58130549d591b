#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbm {

// Runs the command-line tool; exit code 0 on success, 1 on a validation or
// usage error (single-line diagnostic on err), 2 when `check` finds a
// cross-module inconsistency.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sbm
