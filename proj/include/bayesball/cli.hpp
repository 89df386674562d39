#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bayesball {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;  // parse, schema or validation failure
inline constexpr int kExitUnknownNode = 2;
inline constexpr int kExitConnected = 3;     // dsep found an active connection
inline constexpr int kExitSizeGuard = 4;     // oracle refused the network size

// Run the command line tool against `args` (without the program name).
// Results go to `out`, diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bayesball
