#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgrass {

enum class ErrorCode {
  NotSkewHermitian,
  NonPowerOfTwoLength,
  RankDeficient,
  DimensionMismatch,
  NotStiefel,
  TooFewCodewords,
  InvalidRange,
  SizeLimit,
  InvalidM,
  ShapeMismatch,
  ZeroColumn,
  InvalidConfig,
  AlphabetExhausted,
  ParseError,
  IoError,
  InvalidK,
  ConfigError,
  ZeroSignal,
  InvalidEll,
  InvalidForMethod,
  InstrumentationDisabled,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace sgrass
