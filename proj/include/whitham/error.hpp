// Error type shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace whitham {

enum class ErrorCode {
  NonZeroMean,
  NonFinite,
  GridMismatch,
  CavitationViolated,
  TruncationUnsupported,
  ChartMismatch,
  CflViolated,
  InvalidArgument,
  InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonZeroMean: return "NonZeroMean";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::CavitationViolated: return "CavitationViolated";
    case ErrorCode::TruncationUnsupported: return "TruncationUnsupported";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::CflViolated: return "CflViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace whitham
