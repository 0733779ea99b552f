#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discmodes {

/// Command-line front end; args exclude the program name.  Exit codes: 0 on
/// success, 1 on verification failure or runtime error, 2 on argument errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace discmodes
