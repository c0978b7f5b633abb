#pragma once

#include <stdexcept>
#include <string>

namespace hierarchyrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: bad CSV header, unparsable field, bad config line.
/// `line()` is the 1-based input line, or 0 when the error is not tied to a row.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The inputs are well-formed but the requested quantity does not exist.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyNetworkError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UndefinedRhoError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SizeLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateTestError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UndefinedGiniError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hierarchyrank
