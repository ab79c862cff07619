#pragma once

#include "aniso/error.hpp"
#include "aniso/integer.hpp"
#include "aniso/scalars/field.hpp"
#include "aniso/scalars/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aniso::pairing {

using Element = std::vector<Integer>;

/// Z/m_1 x ... x Z/m_k with any moduli >= 2. Normalized groups have m_1 | m_2 | ...
class FiniteAbelianGroup {
public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Integer> moduli);
  /// Rejects factors < 2 or a broken divisibility chain with SchemaError.
  static FiniteAbelianGroup invariant(std::vector<Integer> factors);

  const std::vector<Integer> &moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  Integer order() const;
  Integer exponent() const;
  bool is_normalized() const;

  Element zero() const { return Element(moduli_.size(), 0); }
  Element basis(std::size_t i) const;
  Element reduce(Element x) const;
  Element add(const Element &a, const Element &b) const;
  Element scale(const Element &a, const Integer &k) const;
  Integer element_order(const Element &a) const;
  /// Mixed-radix index in [0, order) and its inverse.
  Integer index_of(const Element &a) const;
  Element element_at(Integer index) const;

private:
  std::vector<Integer> moduli_;
};

struct Subgroup {
  std::vector<Element> generators;
  Integer order;
};

/// Invariant-factor structure of the subgroup generated by `gens`: basis
/// elements (in ambient coordinates) with orders o_1 | o_2 | ... (all >= 2).
struct SubgroupBasis {
  std::vector<Element> basis;
  std::vector<Integer> orders;
  Integer order() const;
};
SubgroupBasis subgroup_basis(const FiniteAbelianGroup &g, const std::vector<Element> &gens);

struct AlternatingPairing {
  FiniteAbelianGroup group;
  /// gram[i][j] = B(e_i, e_j) in [0, 1).
  std::vector<std::vector<Rational>> gram;

  /// B(a, b) reduced into [0, 1).
  Rational evaluate(const Element &a, const Element &b) const;
  std::string to_string() const;
};

/// Reduces gram entries into [0, 1).
AlternatingPairing make_pairing(FiniteAbelianGroup group, std::vector<std::vector<Rational>> gram);

struct Diagnostic {
  bool valid = true;
  std::string reason;
};

Diagnostic validate_pairing(const AlternatingPairing &p);

bool is_isotropic(const AlternatingPairing &p, const std::vector<Element> &gens);

/// Isotropic subgroup with |Gamma| dividing |Lambda|^2, built prime by prime.
Subgroup isotropic_subgroup(const AlternatingPairing &p);

struct BruteForceResult {
  Integer max_order;
  std::vector<Element> witness;
  std::size_t subgroups_visited = 0;
};

/// Exhaustive search over isotropic subgroups (each reached by adjoining one
/// element at a time). GroupTooLarge above `cap` elements or `visit_cap`
/// subgroups.
BruteForceResult brute_force_isotropic_max(const AlternatingPairing &p, const Integer &cap = 4096,
                                           std::size_t visit_cap = 2000000);

/// Operations needed to take commutators of lifts in some unit group.
template <class T> struct LiftOps {
  std::function<T(const T &, const T &)> mul;
  std::function<T(const T &)> inverse;
  std::function<T(const T &, long)> pow;
  /// The scalar c when x = c * 1.
  std::function<std::optional<scalars::FieldElement>(const T &)> scalar_value;
};

/// Commutator pairing on Z/d_1 x ... x Z/d_k from lifts g_i of generators of
/// order d_i in a projective unit group: B(e_i, e_j) = log(g_i g_j g_i^-1 g_j^-1).
template <class T>
AlternatingPairing commutator_pairing(const std::vector<T> &lifts, const std::vector<Integer> &orders,
                                      const LiftOps<T> &ops) {
  if (lifts.size() != orders.size()) fail(ErrorCode::SchemaError, "one order per lift is required");
  Integer exponent = 1;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (orders[i] < 2) fail(ErrorCode::SchemaError, "generator orders must be at least 2");
    if (!ops.scalar_value(ops.pow(lifts[i], orders[i].get_si())))
      fail(ErrorCode::PreconditionFailed, "lift " + std::to_string(i) + " does not have projective order dividing " +
                                              orders[i].get_str());
    exponent = lcm(exponent, orders[i]);
  }
  std::vector<std::vector<Rational>> gram(lifts.size(), std::vector<Rational>(lifts.size(), Rational(0)));
  for (std::size_t i = 0; i < lifts.size(); ++i)
    for (std::size_t j = 0; j < lifts.size(); ++j) {
      if (i == j) continue;
      T c = ops.mul(ops.mul(lifts[i], lifts[j]), ops.mul(ops.inverse(lifts[i]), ops.inverse(lifts[j])));
      auto s = ops.scalar_value(c);
      if (!s) fail(ErrorCode::CommutatorNotScalar, "commutator of lifts " + std::to_string(i) + " and " +
                                                       std::to_string(j) + " is not a scalar");
      if (!s->is_constant())
        fail(ErrorCode::RootOfUnityMissing, "commutator " + s->to_string() + " is not a constant root of unity");
      auto log = s->field().base_field()->root_of_unity_log(s->constant_value(), exponent);
      if (!log)
        fail(ErrorCode::RootOfUnityMissing, "commutator " + s->to_string() + " is not a root of unity of order dividing " +
                                                exponent.get_str());
      gram[i][j] = *log;
    }
  return make_pairing(FiniteAbelianGroup(orders), std::move(gram));
}

LiftOps<scalars::FMatrix> matrix_lift_ops();

} // namespace aniso::pairing
