#include "enriques/errors.hpp"

namespace enriques {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidAnchor: return "InvalidAnchor";
    case ErrorKind::InfeasibleQuery: return "InfeasibleQuery";
    case ErrorKind::CapTooSmall: return "CapTooSmall";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::DecompositionNotFound: return "DecompositionNotFound";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnboundName: return "UnboundName";
    case ErrorKind::UnsatisfiablePairingSpec: return "UnsatisfiablePairingSpec";
  }
  return "Unknown";
}

}  // namespace enriques
