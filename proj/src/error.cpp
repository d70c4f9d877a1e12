#include "bellrand/error.hpp"

namespace bellrand {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnreadableSource: return "UnreadableSource";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case ErrorKind::UnsortedInput: return "UnsortedInput";
    case ErrorKind::ZeroWindow: return "ZeroWindow";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::NoDataForSettingPair: return "NoDataForSettingPair";
    case ErrorKind::EmptyReport: return "EmptyReport";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::size_t line)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      line_(line) {}

}  // namespace bellrand
