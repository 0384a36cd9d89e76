#ifndef ICNOMA_CLI_HPP
#define ICNOMA_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace icnoma {

// Command-line entry point (arguments without the program name). Returns the
// process exit code: 0 success, 1 validation error, 2 search exhausted,
// 3 reproduction mismatch.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}   // namespace icnoma

#endif
