#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spacedcl::cli {

/// Process exit codes.
enum ExitCode : int { ok = 0, config_error = 2, data_error = 3, runtime_error = 4 };

/// Runs one command line (args excludes the program name). Results go to
/// `out`, the one-line diagnostic on failure to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spacedcl::cli
