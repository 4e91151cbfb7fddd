#ifndef CTLAB_ERRORS_HPP
#define CTLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctlab {

/// Malformed polynomial text. `offset` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Operands live in different variable contexts.
class ContextMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Orbifold weights only support valuation and discrepancy arithmetic.
class UnsupportedChart : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// A classification could not be decided at the available jet.
class UndeterminedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (a bug, not a user error).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace ctlab

#endif
