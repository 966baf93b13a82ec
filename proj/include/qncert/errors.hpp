#pragma once

#include <stdexcept>
#include <string>

namespace qncert {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different group backends (or incompatible parameters).
class BackendMismatchError : public Error {
public:
  explicit BackendMismatchError(const std::string& what) : Error(what) {}
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Word or file syntax error; `position` is a 0-based character offset
/// (or line number for sectioned files, see the message).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace qncert
