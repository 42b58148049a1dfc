#include "tslice/error.hpp"

namespace tslice {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownEntity: return "UnknownEntity";
    case ErrorKind::OutsideLifeSpan: return "OutsideLifeSpan";
    case ErrorKind::UnknownPredicate: return "UnknownPredicate";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MultipleHoles: return "MultipleHoles";
    case ErrorKind::MissingMeasure: return "MissingMeasure";
    case ErrorKind::UnknownCollection: return "UnknownCollection";
    case ErrorKind::UnknownStatement: return "UnknownStatement";
    case ErrorKind::EmptyDenominator: return "EmptyDenominator";
    case ErrorKind::NotASubset: return "NotASubset";
    case ErrorKind::TickMismatch: return "TickMismatch";
    case ErrorKind::MalformedStatement: return "MalformedStatement";
    case ErrorKind::UnboundedSpan: return "UnboundedSpan";
    case ErrorKind::InvalidWorld: return "InvalidWorld";
  }
  return "Unknown";
}

} // namespace tslice
