#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nabas {

enum class ErrorCode {
  PrecisionExhausted,
  DivisionByZero,
  ModelMismatch,
  NoSimpleSegment,
  ZeroPoly,
  Dimension,
  NotBiproximal,
  DegeneratePairing,
  BadLetter,
  BadSurface,
  NotDistinct,
  OnAxisEndpoint,
  Order,
  NotHyperbolic,
  Parse,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace nabas
