#pragma once

#include <stdexcept>
#include <string>

namespace enriques {

enum class ErrorKind {
  InvalidInput,
  InvalidAnchor,
  InfeasibleQuery,
  CapTooSmall,
  InvalidPattern,
  DecompositionNotFound,
  TheoremViolation,
  Overflow,
  Syntax,
  UnboundName,
  UnsatisfiablePairingSpec,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. The kind drives the CLI
/// exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define ENRIQUES_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
  };

ENRIQUES_DEFINE_ERROR(InvalidInput)
ENRIQUES_DEFINE_ERROR(InvalidAnchor)
ENRIQUES_DEFINE_ERROR(InfeasibleQuery)
ENRIQUES_DEFINE_ERROR(CapTooSmall)
ENRIQUES_DEFINE_ERROR(InvalidPattern)
ENRIQUES_DEFINE_ERROR(DecompositionNotFound)
ENRIQUES_DEFINE_ERROR(TheoremViolation)
ENRIQUES_DEFINE_ERROR(UnboundName)
ENRIQUES_DEFINE_ERROR(UnsatisfiablePairingSpec)

#undef ENRIQUES_DEFINE_ERROR

/// Raised when a checked integer operation or a bound certificate leaves the
/// supported range. Never silently wraps.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what)
      : Error(ErrorKind::Overflow, what) {}
};

/// Parse failure with a 0-based character offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Syntax,
              "syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace enriques
