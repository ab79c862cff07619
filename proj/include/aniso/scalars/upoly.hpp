#pragma once

#include "aniso/scalars/field.hpp"

#include <string>
#include <vector>

namespace aniso::scalars {

/// Univariate polynomial over a FieldElement field, coefficients low to high,
/// no trailing zeros.
class UPoly {
public:
  explicit UPoly(FieldDescriptor field) : field_(std::move(field)) {}
  UPoly(FieldDescriptor field, std::vector<FieldElement> coeffs);

  static UPoly monomial(const FieldElement &c, std::size_t degree);
  /// t - c
  static UPoly linear(const FieldElement &c);

  const FieldDescriptor &field() const { return field_; }
  const std::vector<FieldElement> &coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  FieldElement coeff(std::size_t k) const;
  const FieldElement &leading() const { return coeffs_.back(); }

  UPoly operator+(const UPoly &o) const;
  UPoly operator-(const UPoly &o) const;
  UPoly operator*(const UPoly &o) const;
  UPoly operator-() const;
  bool operator==(const UPoly &o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }
  bool operator!=(const UPoly &o) const { return !(*this == o); }

  UPoly scale(const FieldElement &c) const;
  UPoly monic() const;
  UPoly derivative() const;
  FieldElement evaluate(const FieldElement &x) const;
  /// Quotient and remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly &d) const;

  std::string to_string(const std::string &var = "t") const;

private:
  void trim();

  FieldDescriptor field_;
  std::vector<FieldElement> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly &a, const UPoly &b);

} // namespace aniso::scalars
