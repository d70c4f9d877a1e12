#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bellrand {

enum class ErrorKind {
  UnreadableSource,
  MalformedRecord,
  NonMonotoneTimestamps,
  UnsortedInput,
  ZeroWindow,
  InvalidDistribution,
  InvalidParams,
  TooShort,
  EmptySeries,
  DomainError,
  SeriesTooShort,
  NoDataForSettingPair,
  EmptyReport,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` identifies the contract that
/// was violated; `line()` is set for record-level input errors (1-based, 0 if
/// not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace bellrand
