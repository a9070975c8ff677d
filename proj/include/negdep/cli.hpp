#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace negdep::cli {

// Exit codes are part of the command-line contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs `negdep <command> ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace negdep::cli
