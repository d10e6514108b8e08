#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uebk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitIndeterminate = 3;
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Basis files go to
/// `--out` or, when it is absent or "-", to `out`; `--in` defaults to `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace uebk::cli
