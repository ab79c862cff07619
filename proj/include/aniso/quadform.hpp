#pragma once

#include "aniso/error.hpp"
#include "aniso/integer.hpp"
#include "aniso/scalars/field.hpp"
#include "aniso/scalars/matrix.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace aniso::quadform {

using scalars::FieldDescriptor;
using scalars::FieldElement;
using scalars::FMatrix;
using Vector = std::vector<FieldElement>;

/// q(x) = sum_{i <= j} Q_ij x_i x_j with Q upper triangular.
class QuadraticForm {
public:
  /// SchemaError unless `upper` is square with zeros below the diagonal.
  explicit QuadraticForm(FMatrix upper);
  static QuadraticForm diagonal(const Vector &coeffs);

  const FieldDescriptor &field() const { return q_.field(); }
  std::size_t dim() const { return q_.rows(); }
  const FMatrix &coeffs() const { return q_; }
  const FieldElement &coeff(std::size_t i, std::size_t j) const { return q_(i, j); }

  FieldElement evaluate(const Vector &x) const;
  /// The form x -> q(g x), expanded exactly.
  QuadraticForm compose(const FMatrix &g) const;
  QuadraticForm scale(const FieldElement &c) const;
  bool operator==(const QuadraticForm &o) const { return q_ == o.q_; }
  bool operator!=(const QuadraticForm &o) const { return !(*this == o); }
  /// Polynomial in x1..xn (or the supplied names).
  std::string to_string(const std::vector<std::string> &names = {}) const;

private:
  FMatrix q_;
};

/// B_q(v, w) = q(v + w) - q(v) - q(w) as a symmetric Gram matrix.
FMatrix associated_bilinear(const QuadraticForm &q);
bool is_nondegenerate(const QuadraticForm &q);

struct Diagonalization {
  FMatrix change; ///< columns are the new basis vectors
  Vector coefficients;
};
/// CharTwo in characteristic 2, DegenerateForm when B_q is singular.
Diagonalization diagonalize(const QuadraticForm &q);

/// True iff c is a square in Q (other fields: only c = 1 and perfect squares found by try_root).
bool is_square(const FieldElement &c);

struct ArfNormalForm {
  FieldElement a;
  FMatrix change;
  QuadraticForm normal_form; ///< x1^2 + x1 x2 + a x2^2 + x3 x4 + ...
  /// A nonzero vector with q = 0, when dim > 2 or the leading block is split.
  std::optional<Vector> isotropic_vector;
};
/// Over F_{2^m}. WrongCharacteristic otherwise, DegenerateForm when B_q is singular.
ArfNormalForm arf_normal_form(const QuadraticForm &q);
/// Whether a - a' lies in {c^2 - c}. WrongCharacteristic unless F_{2^m}; FieldTooLarge past `cap`.
bool arf_invariant_class(const FieldElement &a, const FieldElement &a2, const Integer &cap = 1 << 16);

/// All vectors of a finite field vector space except 0 are tried; GroupTooLarge past `cap`.
std::optional<Vector> find_isotropic_exhaustive(const QuadraticForm &q, const Integer &cap = 1 << 20);

struct IsotropicWitness {
  Vector v1, v2; ///< g v1 = v1, g v2 = v1 + v2
  FieldElement q_v1;
};
/// g an isometry of q of exact order p = char > 2. NotOrderP, NotIsometry.
IsotropicWitness extract_isotropic_from_order_p(const FMatrix &g, const QuadraticForm &q);

/// lambda with q o g = lambda q, or nullopt.
std::optional<FieldElement> scaling_factor(const FMatrix &g, const QuadraticForm &q);
/// Smallest k <= bound with g^k scalar.
std::optional<long> projective_order(const FMatrix &g, long bound = 8);

struct InvolutionReport {
  FieldElement lambda;
  bool orthogonal;  ///< lambda = 1
  long projective_order;
  bool square_is_identity; ///< g^2 = 1 (checked for orthogonal lifts)
  std::vector<std::pair<FieldElement, std::size_t>> eigenvalues;
};
/// CharTwo; NotIsometry; NotDiagonalizable when eigenvalues leave the base
/// field; OrderExceedsBound when an orthogonal lift is not an involution or the
/// projective order is not 1, 2 or 4.
InvolutionReport involution_check(const FMatrix &g, const QuadraticForm &q);

struct Pfister {
  unsigned k;
  FieldDescriptor field; ///< Q(a1, ..., ak)
  /// Coordinate index = bitmask of the subset (bit i-1 set iff i in I).
  QuadraticForm form;
  FMatrix tau;
  std::optional<FMatrix> sigma; ///< k >= 2
  FieldElement lambda_tau;
};
/// KTooLarge unless 1 <= k <= 5.
Pfister pfister_build(unsigned k);
std::string subset_name(unsigned mask);
/// a_I for the subset with the given bitmask.
FieldElement pfister_coefficient(const FieldDescriptor &field, unsigned mask);

struct DescentStep {
  unsigned level;        ///< the form q_level whose leading a_level-coefficient is examined
  unsigned top_degree;   ///< M
  bool upper_half;       ///< true: the tuple (c_{I u {level}, M}); false: (c_{I, M}), level not in I
  FieldElement leading_value; ///< q_{level-1} on that tuple (nonzero), or q_1 itself at level 1
};
struct RefutationTrace {
  FieldElement value; ///< q_k(candidate), nonzero
  std::vector<DescentStep> steps;
};
/// AllZeroCandidate; SchemaError for non-polynomial entries or wrong length;
/// InternalConsistency if the candidate is a zero of q_k.
RefutationTrace pfister_refute_point(unsigned k, const Vector &candidate);
/// Random polynomial tuple of total degree <= max_degree with small integer coefficients, not all zero.
Vector random_pfister_candidate(unsigned k, unsigned max_degree, std::mt19937_64 &rng);

struct PfisterGroup {
  std::vector<FMatrix> elements; ///< projectively normalized
  std::vector<std::vector<std::size_t>> table;
  std::vector<long> orders;
  bool non_abelian;
  FMatrix iota;
  bool iota_nontrivial;
  bool iota_involution;
  bool order_divides_bound; ///< |G| divides 8^(2^k - 1)
  bool orders_in_1_2_4;
};
/// KTooLarge unless 2 <= k <= 5.
PfisterGroup pfister_group_closure(unsigned k);

} // namespace aniso::quadform
