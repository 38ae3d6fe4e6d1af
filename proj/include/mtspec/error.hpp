#pragma once

#include <stdexcept>
#include <string>

namespace mtspec {

enum class ErrorKind {
  UnsupportedShape,
  CompositionMismatch,
  AmbientMismatch,
  OutOfTable,
  Unsupported,
  NotRecorded,
  ContradictoryConstraints,
  OutOfRange,
  DimensionMismatch,
  MissingKr,
  InvalidArgument,
  ParseError,
  InvariantViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotRecorded: return "NotRecorded";
    case ErrorKind::ContradictoryConstraints: return "ContradictoryConstraints";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MissingKr: return "MissingKr";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mtspec
