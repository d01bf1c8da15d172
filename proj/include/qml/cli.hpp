#pragma once

#include <iosfwd>

namespace qml {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitCoverage = 3;
inline constexpr int kExitUsage = 64;

/// Entry point of the `qml` tool. JSON goes to `out` unless --human is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qml
