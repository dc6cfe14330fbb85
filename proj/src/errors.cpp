#include "hyperirr/errors.hpp"

namespace hyperirr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:       return "InvalidArgument";
    case ErrorKind::NotCoprime:            return "NotCoprime";
    case ErrorKind::NotPrime:              return "NotPrime";
    case ErrorKind::NotPrimePower:         return "NotPrimePower";
    case ErrorKind::SizeExceeded:          return "SizeExceeded";
    case ErrorKind::DivisionByZero:        return "DivisionByZero";
    case ErrorKind::FieldMismatch:         return "FieldMismatch";
    case ErrorKind::ZeroElement:           return "ZeroElement";
    case ErrorKind::Reducible:             return "Reducible";
    case ErrorKind::ZeroRoot:              return "ZeroRoot";
    case ErrorKind::HypothesisViolated:    return "HypothesisViolated";
    case ErrorKind::NonExistence:          return "NonExistence";
    case ErrorKind::NonIntegralFormula:    return "NonIntegralFormula";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Singular:              return "Singular";
    case ErrorKind::ShapeMismatch:         return "ShapeMismatch";
  }
  return "UnknownError";
}

} // namespace hyperirr
