#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyassign {

enum class ErrorCode {
  kInvalidArgument,
  kUnsupportedMetric,
  kOutOfRange,
  kCapacityExhausted,
  kTooManyCustomers,
  kNoClaims,
  kParse,
  kSchema,
  kNotFound,
  kEmptySession,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can pick an exit status and the service an HTTP status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polyassign
