#pragma once

#include <iosfwd>

namespace rce {

enum ExitCode : int { kExitOk = 0, kExitInfeasible = 1, kExitUsage = 2, kExitRefused = 3 };

// Entry point of the `rce` command line tool, with output streams injected for tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rce
