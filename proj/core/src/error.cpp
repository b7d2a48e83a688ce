#include "sgrass/error.hpp"

namespace sgrass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorCode::NonPowerOfTwoLength: return "NonPowerOfTwoLength";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotStiefel: return "NotStiefel";
    case ErrorCode::TooFewCodewords: return "TooFewCodewords";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InvalidM: return "InvalidM";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::AlphabetExhausted: return "AlphabetExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::InvalidEll: return "InvalidEll";
    case ErrorCode::InvalidForMethod: return "InvalidForMethod";
    case ErrorCode::InstrumentationDisabled: return "InstrumentationDisabled";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sgrass
