#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abscompat {

enum class ErrorKind {
  NotHermitian,
  NumericalFailure,
  ShapeMismatch,
  ShapeIncompatible,
  NotContraction,
  NotInUnitInterval,
  NotUnitary,
  EndpointAmbiguity,
  LengthMismatch,
  InvalidArgument,
  NotTripleHom,
  AmbiguousBlock,
  GeneratorExhausted,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace abscompat
