#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optstate {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point was handed to an operation on a space it does not belong to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integration or iteration produced NaN or infinity.
class NonfiniteStateError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

/// The running cocycle product collapsed to zero (or overflowed) even after
/// renormalization.
class SingularCollapseError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnknownNameError : public Error {
 public:
  using Error::Error;
};

/// Parse failure in one of the textual grammars. `position` is a 0-based
/// character offset into the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NonPeriodicError : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

}  // namespace optstate
