#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aniso {

enum class ErrorCode {
  DivisionByZero,
  DescriptorMismatch,
  FieldTooLarge,
  NotAlgebraic,
  RootOfUnityMissing,
  NotUnimodular,
  InvalidModulus,
  ClosureCapExceeded,
  CharDividesOrder,
  NotInvariant,
  NotAnisotropic,
  OrderMismatch,
  TrivialGroup,
  InvalidPairing,
  GroupTooLarge,
  CommutatorNotScalar,
  SpecMismatch,
  NotInvertible,
  PrimeTooLarge,
  ZeroPolynomial,
  DegenerateForm,
  CharTwo,
  WrongCharacteristic,
  NotOrderP,
  NotIsometry,
  NotDiagonalizable,
  OrderExceedsBound,
  HypothesisFails,
  KTooLarge,
  AllZeroCandidate,
  UnknownType,
  MissingParameter,
  UnknownExampleId,
  SchemaError,
  PreconditionFailed,
  InternalConsistency,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it as a structured object.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

} // namespace aniso
