#ifndef WMSF_TOOLS_COMMANDS_HPP
#define WMSF_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

namespace wmsf::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 on success, 2 on validation errors, 3 on failed invariants.
int run(const std::vector<std::string>& args);

}  // namespace wmsf::cli

#endif
