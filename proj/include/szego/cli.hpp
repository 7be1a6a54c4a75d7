#pragma once

#include <iosfwd>

namespace szego {

// exit codes: 0 ok, 1 usage or IO, 2 hypothesis violation
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace szego
