#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithtop {

enum class ErrorKind {
  DimensionMismatch,
  NotPrime,
  TauDoesNotDescend,
  TauNotInvertible,
  TauOrderNotDividingP,
  MapDoesNotDescend,
  InclusionFails,
  ModuleNotFinite,
  ModuleNotTorsionFree,
  InconsistentRank,
  PrimeMismatch,
  NotSquareFree,
  NotReal,
  InvalidArgument,
  MalformedRecord,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TauDoesNotDescend: return "TauDoesNotDescend";
    case ErrorKind::TauNotInvertible: return "TauNotInvertible";
    case ErrorKind::TauOrderNotDividingP: return "TauOrderNotDividingP";
    case ErrorKind::MapDoesNotDescend: return "MapDoesNotDescend";
    case ErrorKind::InclusionFails: return "InclusionFails";
    case ErrorKind::ModuleNotFinite: return "ModuleNotFinite";
    case ErrorKind::ModuleNotTorsionFree: return "ModuleNotTorsionFree";
    case ErrorKind::InconsistentRank: return "InconsistentRank";
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::NotSquareFree: return "NotSquareFree";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable kind; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace arithtop
