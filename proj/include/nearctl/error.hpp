#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nearctl {

enum class ErrorCode {
  kInvalidInput,
  kNonFinite,
  kDimensionMismatch,
  kComplexSpectrum,
  kIllConditioned,
  kOnHypersurface,
  kNonPositiveDiagonal,
  kNoConvergence,
  kDegenerateNodes,
  kSingular,
  kBigJordanBlock,
  kZeroEigenvalue,
  kGainSearchFailed,
  kOrthantMismatch,
  kInfeasible,
  kConnectFailed,
  kNotNearlyControllable,
  kEndpointOnHypersurface,
  kQExhausted,
  kSupportMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nearctl
