#include "ramploads/errors.hpp"

namespace ramploads {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NonMonotoneProfile: return "NonMonotoneProfile";
    case ErrorCode::LayerUndefined: return "LayerUndefined";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::StartFailure: return "StartFailure";
    case ErrorCode::OutOfValidityRange: return "OutOfValidityRange";
    case ErrorCode::DegenerateStation: return "DegenerateStation";
    case ErrorCode::UnsortedStations: return "UnsortedStations";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::SupportOutsideDomain: return "SupportOutsideDomain";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace ramploads
