#pragma once

#include "aniso/scalars/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace aniso::scalars {

enum class FieldKind { Rationals, Cyclotomic, PrimeField, FiniteField, FunctionField };

/// Describes one of Q, Q(zeta_N), F_p, F_{p^m}, or a rational function field
/// over one of those. Nested function fields are flattened into one variable
/// list. Cheap to copy; equality is structural.
class FieldDescriptor {
public:
  static FieldDescriptor rationals();
  static FieldDescriptor cyclotomic(const Integer &n);
  static FieldDescriptor prime_field(const Integer &p);
  static FieldDescriptor finite_field(const Integer &p, unsigned m);
  static FieldDescriptor function_field(const FieldDescriptor &base, std::vector<std::string> variables);

  FieldKind kind() const;
  const Integer &characteristic() const;
  /// The coefficient field (the descriptor itself unless a function field).
  FieldDescriptor coefficient_field() const;
  const std::vector<std::string> &variables() const;
  std::size_t nvars() const { return variables().size(); }
  /// N of a cyclotomic coefficient field (1 for Q), p and m for finite ones.
  const Integer &cyclotomic_order() const;
  unsigned extension_degree() const;
  const BaseFieldPtr &base_field() const;

  /// Name used for the coefficient-field generator in text I/O ("zeta" or "g").
  std::string generator_name() const;
  std::optional<std::size_t> variable_index(const std::string &name) const;

  bool operator==(const FieldDescriptor &o) const;
  bool operator!=(const FieldDescriptor &o) const { return !(*this == o); }
  std::string to_string() const;

private:
  struct Impl;
  explicit FieldDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Exact element of a FieldDescriptor: num/den with gcd(num, den) = 1 and den
/// monic in lex order. For non-function fields both are constants and den = 1.
class FieldElement {
public:
  explicit FieldElement(const FieldDescriptor &field);

  static FieldElement from_integer(const FieldDescriptor &field, const Integer &n);
  static FieldElement from_rational(const FieldDescriptor &field, const Rational &q);
  static FieldElement from_base(const FieldDescriptor &field, const BaseElem &c);
  static FieldElement from_polys(const FieldDescriptor &field, Poly num, Poly den);
  static FieldElement variable(const FieldDescriptor &field, const std::string &name);
  /// zeta_N for cyclotomic coefficient fields, the table generator for F_{p^m}.
  static FieldElement generator(const FieldDescriptor &field);
  static FieldElement root_of_unity(const FieldDescriptor &field, const Integer &d);

  const FieldDescriptor &field() const { return field_; }
  const Poly &numerator() const { return num_; }
  const Poly &denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// Element of the coefficient field (no variables involved).
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// The coefficient-field value of a constant element.
  BaseElem constant_value() const;

  FieldElement operator+(const FieldElement &o) const;
  FieldElement operator-(const FieldElement &o) const;
  FieldElement operator*(const FieldElement &o) const;
  FieldElement operator/(const FieldElement &o) const;
  FieldElement operator-() const;
  FieldElement &operator+=(const FieldElement &o) { return *this = *this + o; }
  FieldElement &operator-=(const FieldElement &o) { return *this = *this - o; }
  FieldElement &operator*=(const FieldElement &o) { return *this = *this * o; }
  FieldElement inverse() const;
  FieldElement pow(const Integer &e) const;

  bool operator==(const FieldElement &o) const;
  bool operator!=(const FieldElement &o) const { return !(*this == o); }

  /// Degree of num minus degree of den in each variable.
  std::vector<long> variable_degrees() const;

  std::string to_string() const;

private:
  FieldElement(FieldDescriptor field, Poly num, Poly den);
  void check_same(const FieldElement &o) const;

  FieldDescriptor field_;
  Poly num_;
  Poly den_;
};

/// Parses expressions such as "(x + 1)/(x - y)", "3/4*a1^2", "zeta^2 - 1".
/// Identifiers are the field's variables plus its generator name.
FieldElement parse_element(const FieldDescriptor &field, const std::string &text);

} // namespace aniso::scalars
