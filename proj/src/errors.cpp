#include "qsl/errors.hpp"

namespace qsl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotTraceless: return "NotTraceless";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::StepCountTooSmall: return "StepCountTooSmall";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NegativeEnergy: return "NegativeEnergy";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::PureCheckOnMixedRun: return "PureCheckOnMixedRun";
    case ErrorKind::TruncationLeakage: return "TruncationLeakage";
    case ErrorKind::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace qsl
