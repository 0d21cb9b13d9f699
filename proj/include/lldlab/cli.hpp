#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lldlab::cli {

// Runs one command (argv without the program name) and writes the report to
// out. Returns the process exit status: 0 success, 2 validation or input
// error, 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lldlab::cli
