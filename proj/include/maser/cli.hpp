#pragma once

#include <string>
#include <vector>

namespace maser {

/// Exit codes of the `maser` tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2, kExitVerifyFailed = 3 };

/// Entry point of the command-line tool; argv[0] is the program name.
int run_command(int argc, const char* const* argv);
int run_command(const std::vector<std::string>& args);

/// Writes `content` to a temporary file next to `path`, then renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace maser
