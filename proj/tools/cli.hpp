#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace halving::cli {

// Exit codes returned by dispatch.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

// `args` excludes the program name. Normal output goes to `out` unless
// --out names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halving::cli
