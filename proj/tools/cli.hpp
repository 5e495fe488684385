#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmexp::cli {

// Runs the command line tool on args (without the program name).
// Returns 0 on success, 1 on numerical, domain or file errors, 2 on
// usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmexp::cli
