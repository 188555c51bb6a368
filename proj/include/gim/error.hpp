#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gim {

enum class ErrorCode {
  EmptySample,
  NegativeIncome,
  NonFinite,
  OrderExceedsSample,
  SampleTooSmall,
  ZeroMean,
  EnumerationTooLarge,
  InvalidOrder,
  InvalidLevel,
  InvalidParameter,
  OutOfSupport,
  InvalidProbability,
  QuadratureNoConvergence,
  EmptyGrid,
  FileNotFound,
  ParseError,
  EmptyColumn,
  InvalidBandwidth,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; `code()` lets
// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gim
