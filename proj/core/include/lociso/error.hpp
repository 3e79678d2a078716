#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lociso {

enum class Errc {
  UnknownSymbol,
  DuplicateSymbol,
  ArityMismatch,
  DanglingElement,
  DuplicateElement,
  UnknownElement,
  UnfaithfulRadius,
  LanguageMismatch,
  NoFaithfulElements,
  WindowExhausted,
  NotFunctional,
  NotEquational,
  NotAutomorphism,
  NonClosedWindow,
  GroupClosureExceedsBound,
  GluingConflict,
  NoOrbitRepresentative,
  VerificationFailed,
  HypothesisUnverified,
  CharacterizationFails,
  RationalSlope,
  BadAddressEntry,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace lociso
