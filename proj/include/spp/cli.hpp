// Command-line front end. Exit codes: 0 success (verify: stable), 1 verify
// found the matching unstable, 2 usage error, 3 input or runtime error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spp
