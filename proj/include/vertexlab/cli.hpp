#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vertexlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitGolden = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNumerical = 70;

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vertexlab::cli
