#pragma once

#include <ostream>

namespace turingflow {

// Exit status 0 on success, 1 on a domain error (one "error code=... message=..."
// line on `err`), 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace turingflow
