#pragma once

#include <stdexcept>
#include <string>

namespace pcs {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed value passed to an operation (bad coordinates, wrong base
/// instance, length mismatch, invalid budget).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An operation's stated precondition does not hold (non-cycle chain,
/// non-loop path, segment gluing mismatch, uncertified ball).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// Input text could not be parsed; message carries a line number.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A bounded search refused to run or gave up; message carries the size
/// diagnostic. Maps to the "not certified" exit path in the CLI.
struct SearchLimitError : Error {
  explicit SearchLimitError(const std::string& msg) : Error(msg) {}
};

}  // namespace pcs
