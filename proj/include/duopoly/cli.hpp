#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace duopoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;

// Runs one command; args excludes the program name. Reports go to out,
// diagnostics and usage to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace duopoly::cli
