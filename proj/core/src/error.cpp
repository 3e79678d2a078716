#include "lociso/error.hpp"

namespace lociso {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::DuplicateSymbol: return "DuplicateSymbol";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DanglingElement: return "DanglingElement";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::UnfaithfulRadius: return "UnfaithfulRadius";
    case Errc::LanguageMismatch: return "LanguageMismatch";
    case Errc::NoFaithfulElements: return "NoFaithfulElements";
    case Errc::WindowExhausted: return "WindowExhausted";
    case Errc::NotFunctional: return "NotFunctional";
    case Errc::NotEquational: return "NotEquational";
    case Errc::NotAutomorphism: return "NotAutomorphism";
    case Errc::NonClosedWindow: return "NonClosedWindow";
    case Errc::GroupClosureExceedsBound: return "GroupClosureExceedsBound";
    case Errc::GluingConflict: return "GluingConflict";
    case Errc::NoOrbitRepresentative: return "NoOrbitRepresentative";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::HypothesisUnverified: return "HypothesisUnverified";
    case Errc::CharacterizationFails: return "CharacterizationFails";
    case Errc::RationalSlope: return "RationalSlope";
    case Errc::BadAddressEntry: return "BadAddressEntry";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace lociso
