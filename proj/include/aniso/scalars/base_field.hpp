#pragma once

#include "aniso/integer.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace aniso::scalars {

/// Element of F[t]/(mu(t)) in the power basis 1, t, ..., t^(D-1), where F is
/// the prime field (Q or F_p). Char-p coordinates are integers in [0, p).
using BaseElem = std::vector<Rational>;

/// A coefficient field: Q, Q(zeta_N) = Q[t]/(Phi_N), F_p, or
/// F_{p^m} = F_p[t]/(f) with f taken from the fixed irreducible table.
/// Instances are immutable and shared.
class BaseField {
public:
  static std::shared_ptr<const BaseField> rationals();
  static std::shared_ptr<const BaseField> cyclotomic(const Integer &n);
  static std::shared_ptr<const BaseField> finite(const Integer &p, unsigned m);

  const Integer &characteristic() const { return characteristic_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  /// Monic modulus, coefficients low to high. For D = 1 this is just t.
  const std::vector<Rational> &modulus() const { return modulus_; }
  /// N for cyclotomic fields (1 for Q), 0 for finite fields.
  const Integer &cyclotomic_order() const { return cyclotomic_order_; }
  bool is_finite() const { return characteristic_ != 0; }
  /// p^m for finite fields, 0 otherwise.
  Integer order() const;

  BaseElem zero() const { return BaseElem(degree(), Rational(0)); }
  BaseElem one() const;
  BaseElem from_rational(const Rational &q) const;
  /// The class of t: zeta_N in the cyclotomic case, the table generator for F_{p^m}.
  BaseElem generator() const;

  bool is_zero(const BaseElem &a) const;
  bool is_one(const BaseElem &a) const;
  bool is_prime_field_element(const BaseElem &a) const;

  BaseElem add(const BaseElem &a, const BaseElem &b) const;
  BaseElem sub(const BaseElem &a, const BaseElem &b) const;
  BaseElem neg(const BaseElem &a) const;
  BaseElem mul(const BaseElem &a, const BaseElem &b) const;
  BaseElem inv(const BaseElem &a) const;
  BaseElem pow(const BaseElem &a, const Integer &e) const;
  BaseElem scale(const BaseElem &a, const Rational &q) const;

  /// Reduces a prime-field scalar (mod p in positive characteristic).
  Rational reduce(const Rational &q) const;

  /// Primitive d-th root of unity. Cyclotomic fields contain mu_lcm(2,N);
  /// finite fields contain mu_d iff d | q - 1.
  BaseElem root_of_unity(const Integer &d) const;
  /// k/d in [0,1) with a = zeta_d^k for the canonical zeta_d, when a is a root
  /// of unity of order dividing d; nullopt otherwise.
  std::optional<Rational> root_of_unity_log(const BaseElem &a, const Integer &d) const;
  /// Largest M such that mu_M is available by root_of_unity (0 if unbounded search is needed).
  Integer roots_of_unity_order() const;

  /// Finite fields only: elements in canonical order (index = sum c_i p^i).
  std::vector<BaseElem> elements(const Integer &cap) const;
  Integer index_of(const BaseElem &a) const;
  BaseElem element_at(const Integer &index) const;

  /// Frobenius inverse (square root in char 2, p-th root in char p) for finite fields.
  BaseElem pth_root(const BaseElem &a) const;

  std::string to_string(const BaseElem &a, const std::string &generator_name) const;
  std::string describe() const;

  bool same_as(const BaseField &other) const;

private:
  BaseField() = default;

  Integer characteristic_ = 0;
  std::vector<Rational> modulus_;
  Integer cyclotomic_order_ = 0;
  unsigned ext_degree_ = 1;
};

using BaseFieldPtr = std::shared_ptr<const BaseField>;

/// Phi_n over Z, coefficients low to high.
std::vector<Integer> cyclotomic_polynomial(const Integer &n);

/// Irreducible modulus used for F_{p^m}: a Conway polynomial from the built-in
/// table when present, otherwise the lexicographically least monic irreducible.
/// Coefficients low to high, monic, in [0, p).
std::vector<Integer> finite_field_modulus(const Integer &p, unsigned m);

/// Rabin irreducibility test over F_p.
bool is_irreducible_mod_p(const std::vector<Integer> &poly, const Integer &p);

} // namespace aniso::scalars
