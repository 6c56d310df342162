#include "abscompat/error.hpp"

namespace abscompat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ShapeIncompatible: return "ShapeIncompatible";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotInUnitInterval: return "NotInUnitInterval";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::EndpointAmbiguity: return "EndpointAmbiguity";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotTripleHom: return "NotTripleHom";
    case ErrorKind::AmbiguousBlock: return "AmbiguousBlock";
    case ErrorKind::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace abscompat
