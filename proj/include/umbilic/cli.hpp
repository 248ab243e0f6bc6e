#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace umbilic::cli {

// Exit status contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCondition = 1;  // a mathematical condition failed
inline constexpr int kExitUsage = 2;      // bad flags or configuration

/// Runs one command line (args[0] is the program name). Tables go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace umbilic::cli
