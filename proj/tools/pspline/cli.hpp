#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pspline {

/// Runs the command line (arguments without the program name) and returns
/// the process exit code. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pspline
