#include "chowcalc/error.hpp"

namespace chowcalc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::InconsistentInput: return "inconsistent_input";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::ContextMismatch: return "context_mismatch";
    case ErrorKind::UndeclaredRank: return "undeclared_rank";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Cycle: return "cycle";
    case ErrorKind::InternalAssertion: return "internal_assertion";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace chowcalc
