#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotinv {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (without the program name). The report goes to
/// `out` unless --out is given; errors go to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotinv
