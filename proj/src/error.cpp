#include "mz/error.hpp"

namespace mz {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InhomogeneousProjective: return "InhomogeneousProjective";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::SmallCharacteristic: return "SmallCharacteristic";
    case ErrorKind::NotTorsor: return "NotTorsor";
    case ErrorKind::InsufficientTerms: return "InsufficientTerms";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BadLeadingCoefficient: return "BadLeadingCoefficient";
    case ErrorKind::AdditiveReduction: return "AdditiveReduction";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::MissingPlaces: return "MissingPlaces";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NoFit: return "NoFit";
    case ErrorKind::NotSolvable: return "NotSolvable";
    case ErrorKind::NotWeil: return "NotWeil";
    case ErrorKind::NotMonomialRatio: return "NotMonomialRatio";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoFit:
    case ErrorKind::NotSolvable:
    case ErrorKind::NotWeil:
    case ErrorKind::NotMonomialRatio:
      return 3;
    case ErrorKind::TooLarge:
      return 4;
    default:
      return 2;
  }
}

}  // namespace mz
