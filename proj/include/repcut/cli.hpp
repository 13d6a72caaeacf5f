#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repcut {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitComputation = 3;

// Runs the command line `args` (without the program name). Tables go to
// `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.9g, with nan / inf / -inf spelled out.
std::string format_number(double x);

}  // namespace repcut
