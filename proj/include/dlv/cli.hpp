#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dlv {

// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 runtime or I/O error.
enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitRuntime = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlv
