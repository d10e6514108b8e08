#include "uebk/error.hpp"

namespace uebk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::InvalidCut: return "InvalidCut";
    case ErrorKind::InvalidArity: return "InvalidArity";
    case ErrorKind::ZeroEntryIsometry: return "ZeroEntryIsometry";
    case ErrorKind::RankDefect: return "RankDefect";
    case ErrorKind::NotInCatalog: return "NotInCatalog";
    case ErrorKind::DecompositionInvalid: return "DecompositionInvalid";
    case ErrorKind::InvalidTiling: return "InvalidTiling";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::LiftBlocked: return "LiftBlocked";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidBasisFile: return "InvalidBasisFile";
  }
  return "Unknown";
}

}  // namespace uebk
