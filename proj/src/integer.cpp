#include "aniso/integer.hpp"

#include "aniso/error.hpp"

#include <cctype>

namespace aniso {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::DivisionByZero: return "DivisionByZero";
  case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
  case ErrorCode::FieldTooLarge: return "FieldTooLarge";
  case ErrorCode::NotAlgebraic: return "NotAlgebraic";
  case ErrorCode::RootOfUnityMissing: return "RootOfUnityMissing";
  case ErrorCode::NotUnimodular: return "NotUnimodular";
  case ErrorCode::InvalidModulus: return "InvalidModulus";
  case ErrorCode::ClosureCapExceeded: return "ClosureCapExceeded";
  case ErrorCode::CharDividesOrder: return "CharDividesOrder";
  case ErrorCode::NotInvariant: return "NotInvariant";
  case ErrorCode::NotAnisotropic: return "NotAnisotropic";
  case ErrorCode::OrderMismatch: return "OrderMismatch";
  case ErrorCode::TrivialGroup: return "TrivialGroup";
  case ErrorCode::InvalidPairing: return "InvalidPairing";
  case ErrorCode::GroupTooLarge: return "GroupTooLarge";
  case ErrorCode::CommutatorNotScalar: return "CommutatorNotScalar";
  case ErrorCode::SpecMismatch: return "SpecMismatch";
  case ErrorCode::NotInvertible: return "NotInvertible";
  case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
  case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
  case ErrorCode::DegenerateForm: return "DegenerateForm";
  case ErrorCode::CharTwo: return "CharTwo";
  case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
  case ErrorCode::NotOrderP: return "NotOrderP";
  case ErrorCode::NotIsometry: return "NotIsometry";
  case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
  case ErrorCode::OrderExceedsBound: return "OrderExceedsBound";
  case ErrorCode::HypothesisFails: return "HypothesisFails";
  case ErrorCode::KTooLarge: return "KTooLarge";
  case ErrorCode::AllZeroCandidate: return "AllZeroCandidate";
  case ErrorCode::UnknownType: return "UnknownType";
  case ErrorCode::MissingParameter: return "MissingParameter";
  case ErrorCode::UnknownExampleId: return "UnknownExampleId";
  case ErrorCode::SchemaError: return "SchemaError";
  case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

namespace {

bool well_formed_integer(const std::string &s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

} // namespace

Integer parse_integer(const std::string &text) {
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (!well_formed_integer(s)) fail(ErrorCode::SchemaError, "malformed integer '" + text + "'");
  return Integer(s, 10);
}

Rational parse_rational(const std::string &text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_prime(const Integer &n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Integer, unsigned>> factorize(const Integer &n) {
  std::vector<std::pair<Integer, unsigned>> out;
  Integer m = abs(n);
  if (m < 2) return out;
  for (Integer p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (divides(p, m)) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

Integer coprime_part(const Integer &n, const Integer &p) {
  Integer m = abs(n);
  if (p <= 1) return m;
  while (m != 0 && divides(p, m)) m /= p;
  return m;
}

Integer inverse_mod(const Integer &a, const Integer &m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorCode::DivisionByZero, "no inverse of " + a.get_str() + " modulo " + m.get_str());
  return r;
}

std::int64_t to_int64(const Integer &z) {
  if (!z.fits_slong_p()) fail(ErrorCode::PreconditionFailed, "integer " + z.get_str() + " exceeds 64 bits");
  return z.get_si();
}

} // namespace aniso
