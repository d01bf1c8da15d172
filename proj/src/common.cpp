#include <algorithm>
#include <limits>

#include "qml/error.hpp"

namespace qml {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecondition: return "PRECONDITION";
    case ErrorCode::kNotPrime: return "NOT_PRIME";
    case ErrorCode::kBadPrime: return "BAD_PRIME";
    case ErrorCode::kNoSolution: return "NO_SOLUTION";
    case ErrorCode::kAmbiguous: return "AMBIGUOUS";
    case ErrorCode::kParity: return "PARITY";
    case ErrorCode::kNotSplit: return "NOT_SPLIT";
    case ErrorCode::kMissingReport: return "MISSING_REPORT";
    case ErrorCode::kDInIdeal: return "D_IN_IDEAL";
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kDuplicate: return "DUPLICATE";
    case ErrorCode::kNonIntegral: return "NON_INTEGRAL";
    case ErrorCode::kCoverage: return "COVERAGE";
    case ErrorCode::kOverflow: return "OVERFLOW";
  }
  return "UNKNOWN";
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  u128 mag = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::int64_t narrow64(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kOverflow, to_string(v) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

i128 isqrt(i128 n) {
  if (n < 0) throw Error(ErrorCode::kPrecondition, "isqrt of a negative number");
  if (n < 2) return n;
  // Newton iteration from an upper bound
  i128 x = n;
  i128 y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace qml
