#pragma once

#include "aniso/error.hpp"
#include "aniso/integer.hpp"
#include "aniso/pairing.hpp"
#include "aniso/scalars/algebraic.hpp"
#include "aniso/scalars/field.hpp"
#include "aniso/scalars/matrix.hpp"
#include "aniso/scalars/upoly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace aniso::csa {

using scalars::FieldDescriptor;
using scalars::FieldElement;
using scalars::FMatrix;
using scalars::UPoly;

enum class AlgebraKind { Symbol, WeylModP };

/// Symbol algebra (a,b)_n: u^n = a, v^n = b, vu = zeta_n uv.
/// Weyl algebra mod p over F_p(x,y): v^p = x, u^p = y, vu - uv = 1.
/// Both are stored with u^n = a and v^n = b.
struct AlgebraSpec {
  AlgebraKind kind;
  FieldDescriptor base;
  long n;
  FieldElement a, b;
  /// zeta_n^k for k < n (symbol algebras only).
  std::vector<FieldElement> zeta_powers;

  bool operator==(const AlgebraSpec &o) const;
  std::string to_string() const;
};
using SpecPtr = std::shared_ptr<const AlgebraSpec>;

/// RootOfUnityMissing if zeta_n is not in `base`; SchemaError for n < 2 or a, b = 0.
SpecPtr symbol_algebra(const FieldDescriptor &base, long n, const FieldElement &a, const FieldElement &b);
/// Over F_p(x, y); SchemaError unless p is prime.
SpecPtr weyl_mod_p(long p);

/// sum c_ij u^i v^j with 0 <= i, j < n.
class AlgebraElement {
public:
  explicit AlgebraElement(SpecPtr spec);
  static AlgebraElement scalar(SpecPtr spec, const FieldElement &c);
  static AlgebraElement monomial(SpecPtr spec, long i, long j, const FieldElement &c);
  static AlgebraElement u(SpecPtr spec) { return monomial(spec, 1, 0, FieldElement::from_integer(spec->base, 1)); }
  static AlgebraElement v(SpecPtr spec) { return monomial(spec, 0, 1, FieldElement::from_integer(spec->base, 1)); }

  const SpecPtr &spec() const { return spec_; }
  const FieldElement &coeff(long i, long j) const { return c_[static_cast<std::size_t>(i * spec_->n + j)]; }
  FieldElement &coeff(long i, long j) { return c_[static_cast<std::size_t>(i * spec_->n + j)]; }

  AlgebraElement operator+(const AlgebraElement &o) const;
  AlgebraElement operator-(const AlgebraElement &o) const;
  AlgebraElement operator*(const AlgebraElement &o) const;
  AlgebraElement scale(const FieldElement &c) const;
  AlgebraElement pow(long e) const;
  bool operator==(const AlgebraElement &o) const;
  bool operator!=(const AlgebraElement &o) const { return !(*this == o); }

  bool is_zero() const;
  /// c when the element is c * 1.
  std::optional<FieldElement> scalar_value() const;
  std::string to_string() const;

private:
  void check_same(const AlgebraElement &o) const;
  SpecPtr spec_;
  std::vector<FieldElement> c_;
};

/// SpecMismatch when the operands live in different algebras.
AlgebraElement algebra_multiply(const AlgebraElement &x, const AlgebraElement &y);

/// Parses {"i,j": "expr", ...}-style pairs.
AlgebraElement element_from_terms(SpecPtr spec, const std::vector<std::pair<std::pair<long, long>, std::string>> &terms);

/// Determinant of left multiplication on A as a free right K(u)-module with
/// basis 1, v, ..., v^{n-1}. Symbol algebras only (SpecMismatch otherwise).
FieldElement reduced_norm(const AlgebraElement &x);

/// Matrix of left multiplication on A over the base field (dimension n^2).
FMatrix left_regular_matrix(const AlgebraElement &x);
bool is_invertible(const AlgebraElement &x);

/// NotInvertible for non-units.
AlgebraElement inverse(const AlgebraElement &x);
/// Scaled so that the first nonzero coefficient (in (i, j) order) is 1.
AlgebraElement projective_normalized(const AlgebraElement &x);
/// The subgroup of A*/K* generated by the classes of `generators`, as
/// normalized representatives in BFS order. ClosureCapExceeded past `cap`.
std::vector<AlgebraElement> projective_closure(const std::vector<AlgebraElement> &generators, std::size_t cap);
pairing::LiftOps<AlgebraElement> algebra_lift_ops();

struct NormResidueClass {
  FieldElement norm;
  /// norm with n-th power monomials and n-th power constants removed.
  FieldElement representative;
  /// representative is (constant) * monomial, so the class is decided.
  bool fully_normalized;
  /// Whether the class is trivial in K*/(K*)^n, when that can be decided.
  std::optional<bool> trivial;
};

NormResidueClass norm_residue_class(const AlgebraElement &x);
/// Whether the two classes agree, when decidable.
std::optional<bool> same_norm_class(const AlgebraElement &x, const AlgebraElement &y);

struct ProjectiveOrder {
  bool is_torsion;
  std::optional<long> order;
};

/// Smallest k <= bound with x^k central (default bound n^2). NotInvertible for
/// non-units. For symbol algebras with independent variables a, b (assumed
/// division) a found order must divide n.
ProjectiveOrder finite_order_in_projective_units(const AlgebraElement &x, long bound = 0);

struct WeylCertificate {
  long p;
  FieldDescriptor field; ///< F_p(X, Y) with x = X^p, y = Y^p
  FMatrix u_prime, v_prime, u, v;
  bool u_prime_nilpotent;
  bool v_prime_nilpotent;
  bool u_prime_strictly_lower;
  bool commutator_identity; ///< v'u' - u'v' = 1 and vu - uv = 1
  bool u_power_is_y;
  bool v_power_is_x;
  std::size_t monomial_rank; ///< rank of {u'^i v'^j}; p^2 means A (x) k-bar = Mat_p
  bool all_ok() const;
};

/// PrimeTooLarge for p > 7; SchemaError unless p is prime.
WeylCertificate weyl_split_verification(long p);

struct TorsionSubgroupReport {
  long p;
  std::vector<UPoly> generators;
  std::vector<long> class_orders; ///< 1 or p
  bool commute;
  long rank;
  Integer order;
  bool elementary_abelian;
};

/// Classes [f_i(v)] in A*/K* for the Weyl algebra mod p; each f_i is a
/// polynomial over F_p. ZeroPolynomial for a zero generator, GroupTooLarge
/// when p^m exceeds 10^5.
TorsionSubgroupReport inseparable_torsion_subgroup(long p, const std::vector<UPoly> &generators);

/// The first m monic irreducible polynomials over F_p (by degree, then coefficients).
std::vector<UPoly> irreducible_polynomials(long p, std::size_t m);

struct SeparabilityReport {
  bool separable;
  UPoly minimal_polynomial;
  bool irreducible_certified;
  /// For inseparable elements: the exponent p of the witness subgroup L*/K*.
  std::optional<Integer> witness_order;
};

/// DescriptorMismatch when the element's base is not the algebra's center;
/// NotAlgebraic without a relation.
SeparabilityReport separability_check(const AlgebraSpec &spec, const scalars::AlgebraicElement &elt);

} // namespace aniso::csa
