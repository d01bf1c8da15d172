#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qml {

using i128 = __int128;
using u128 = unsigned __int128;

enum class ErrorCode {
  kPrecondition,
  kNotPrime,
  kBadPrime,
  kNoSolution,
  kAmbiguous,
  kParity,
  kNotSplit,
  kMissingReport,
  kDInIdeal,
  kParse,
  kDuplicate,
  kNonIntegral,
  kCoverage,
  kOverflow,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

std::string to_string(i128 v);

/// Narrow a 128-bit intermediate, throwing kOverflow if it does not fit.
std::int64_t narrow64(i128 v);

i128 isqrt(i128 n);  // floor(sqrt(n)) for n >= 0

bool is_prime(std::uint64_t n);

}  // namespace qml
