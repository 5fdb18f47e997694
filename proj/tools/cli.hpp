#ifndef FROBOP_TOOLS_CLI_HPP
#define FROBOP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace frobop::cli {

// Runs one CLI invocation (args exclude the program name) against the given
// streams.  Exit codes: 0 success, 1 verification failure, 2 flag or parse
// errors, 3 cap exhaustion and internal failures.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace frobop::cli

#endif
