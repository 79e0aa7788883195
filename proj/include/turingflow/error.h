#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turingflow {

enum class ErrorCode {
  kInvalidMachine,
  kHaltingStateStep,
  kUnknownState,
  kUnknownSymbol,
  kNotExtended,
  kSymbolNotInAlphabet,
  kNotInImage,
  kNotCantor,
  kInvalidShift,
  kParse,
  kOutOfDisk,
  kLeftDisk,
  kIntegrationFailure,
  kDegenerateDenominator,
  kNonPositiveParameter,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// Domain error raised by every module. The CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace turingflow
