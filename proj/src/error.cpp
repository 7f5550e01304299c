#include "nabas/error.hpp"

namespace nabas {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted: return "E_PRECISION_EXHAUSTED";
    case ErrorCode::DivisionByZero: return "E_DIVISION_BY_ZERO";
    case ErrorCode::ModelMismatch: return "E_MODEL_MISMATCH";
    case ErrorCode::NoSimpleSegment: return "E_NO_SIMPLE_SEGMENT";
    case ErrorCode::ZeroPoly: return "E_ZERO_POLY";
    case ErrorCode::Dimension: return "E_DIMENSION";
    case ErrorCode::NotBiproximal: return "E_NOT_BIPROXIMAL";
    case ErrorCode::DegeneratePairing: return "E_DEGENERATE_PAIRING";
    case ErrorCode::BadLetter: return "E_BAD_LETTER";
    case ErrorCode::BadSurface: return "E_BAD_SURFACE";
    case ErrorCode::NotDistinct: return "E_NOT_DISTINCT";
    case ErrorCode::OnAxisEndpoint: return "E_ON_AXIS_ENDPOINT";
    case ErrorCode::Order: return "E_ORDER";
    case ErrorCode::NotHyperbolic: return "E_NOT_HYPERBOLIC";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::InvalidArgument: return "E_INVALID_ARGUMENT";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace nabas
