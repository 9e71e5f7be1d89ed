#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meshfwd {

// Entry point behind the `meshfwd` binary. args excludes the program name.
// Returns 0 on success, 1 when a requested route ends NoRoute/HopLimit, and
// 2 on usage or configuration errors. Data goes to out, diagnostics to err.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace meshfwd
