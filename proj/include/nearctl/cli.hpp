#pragma once

#include <ostream>

#include "nearctl/error.hpp"

namespace nearctl {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;  // documented infeasibility / criterion failure
inline constexpr int kExitInvalid = 3;     // unreadable or invalid input

int exit_code_for(ErrorCode code);

// Entry point shared by the executable and the tests. JSON and CSV payloads go
// to `out` unless --out/--csv redirect them; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nearctl
