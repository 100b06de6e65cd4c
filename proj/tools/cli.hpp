#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace piezoharvest::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kNonCompliant = 2;
inline constexpr int kOutOfRange = 3;
inline constexpr int kUsage = 64;

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace piezoharvest::cli
