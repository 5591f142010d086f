#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cskb::cli {

// Exit codes: 0 success, 1 usage or validation error, 2 I/O or transport error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cskb::cli
