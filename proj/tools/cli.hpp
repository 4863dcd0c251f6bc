#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmlab::cli {

// Exit codes: 0 success / EQUAL, 1 finding or mismatch, 2 usage, parse or
// validation error.
inline constexpr int kOk = 0;
inline constexpr int kFinding = 1;
inline constexpr int kUsage = 2;

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmlab::cli
