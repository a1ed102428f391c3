#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levyfp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command line (without the program name), e.g.
///   {"compare", "--config", "bm.cfg", "--x", "2", "--t", "1"}.
/// Tables go to `out` (or --out), diagnostics to `err`. Returns the process
/// exit status: 0 on success, 2 on a parse or validation error, 3 on a
/// numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace levyfp::cli
