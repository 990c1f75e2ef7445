#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edyn::cli {

/// Runs the command line (without the program name). Returns the exit
/// status: 0 on success, 2 on usage errors, 1 on computational errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands a `--config FILE` JSON object into `--key value` tokens placed
/// before the remaining flags, so that explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

} // namespace edyn::cli
