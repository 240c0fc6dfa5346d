#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsat {

enum class ErrorCode {
  kInvalidParameters,
  kInvalidAssignment,
  kTooLarge,
  kParseError,
  kUnsupportedWidth,
  kUnsupported,
  kBuilderError,
  kNumericalFailure,
  kInvalidCircuit,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. Callers that need to
/// branch on the failure class inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsat
