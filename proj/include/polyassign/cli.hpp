#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyassign {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitStrictFail = 3;

// Entry point behind the `polyassign` binary. `args[0]` is the program name.
// All output goes to `out`/`err`, so identical arguments give identical bytes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyassign
