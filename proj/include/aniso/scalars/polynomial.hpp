#pragma once

#include "aniso/scalars/base_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aniso::scalars {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;
  BaseElem coeff;
};

/// Sparse multivariate polynomial over a BaseField. Terms are kept in strictly
/// decreasing lexicographic order of exponent vectors (declared variable order)
/// with nonzero coefficients, so equality is structural.
class Poly {
public:
  Poly(BaseFieldPtr base, std::size_t nvars) : base_(std::move(base)), nvars_(nvars) {}

  static Poly constant(const BaseFieldPtr &base, std::size_t nvars, const BaseElem &c);
  static Poly variable(const BaseFieldPtr &base, std::size_t nvars, std::size_t var);
  static Poly monomial(const BaseFieldPtr &base, Exponents exps, const BaseElem &c);

  const BaseFieldPtr &base() const { return base_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Constant coefficient (zero if absent).
  BaseElem constant_coeff() const;

  const Term &leading() const { return terms_.front(); }
  const BaseElem &leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t degree_in(std::size_t var) const;
  std::uint32_t total_degree() const;

  Poly operator+(const Poly &o) const;
  Poly operator-(const Poly &o) const;
  Poly operator*(const Poly &o) const;
  Poly operator-() const;
  bool operator==(const Poly &o) const;
  bool operator!=(const Poly &o) const { return !(*this == o); }

  Poly scale(const BaseElem &c) const;
  Poly mul_term(const Exponents &exps, const BaseElem &c) const;
  Poly pow(unsigned long e) const;
  Poly monic() const;
  Poly derivative(std::size_t var) const;

  /// Coefficients with respect to `var`: entry k multiplies var^k and has no var.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  static Poly from_coefficients(const BaseFieldPtr &base, std::size_t nvars, std::size_t var,
                                const std::vector<Poly> &coeffs);

  /// Substitutes var := value (a polynomial in the same ring).
  Poly substitute(std::size_t var, const Poly &value) const;

  std::string to_string(const std::vector<std::string> &names, const std::string &generator_name) const;

private:
  friend Poly make_poly(const BaseFieldPtr &, std::size_t, std::vector<Term>);

  BaseFieldPtr base_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// a / b when b divides a exactly, nullopt otherwise.
std::optional<Poly> try_divide(const Poly &a, const Poly &b);
Poly exact_divide(const Poly &a, const Poly &b);

/// Sparse pseudo-remainder of a by b with respect to var.
Poly pseudo_remainder(const Poly &a, const Poly &b, std::size_t var);

/// Monic gcd (leading lex coefficient 1); gcd(0, 0) = 0.
Poly gcd(const Poly &a, const Poly &b);

/// Monic gcd of the coefficients of p with respect to var.
Poly content_in(const Poly &p, std::size_t var);

} // namespace aniso::scalars
