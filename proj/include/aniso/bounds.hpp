#pragma once

#include "aniso/error.hpp"
#include "aniso/integer.hpp"
#include "aniso/scalars/matrix.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aniso::bounds {

using scalars::FieldDescriptor;
using scalars::FMatrix;

struct MinkowskiValues {
  std::optional<Integer> upsilon_a; ///< tabulated for n <= 3 only
  Integer upsilon_m;
};

/// Upsilon_M(n) = prod_p p^(sum_k floor(n / (p^k (p - 1)))). SchemaError for n < 1.
MinkowskiValues minkowski_values(long n);

/// (letter, rank) pairs such as ('E', 8). UnknownType for invalid types.
std::set<long> torsion_primes(const std::vector<std::pair<char, long>> &types);
/// Parses "A4", "B_2", "E8".
std::pair<char, long> parse_dynkin(const std::string &text);

struct FiniteMatrixGroup {
  FieldDescriptor field;
  std::vector<FMatrix> elements;

  /// Closure of the generators; GroupTooLarge past `cap` elements.
  static FiniteMatrixGroup generated_by(const std::vector<FMatrix> &generators, std::size_t cap = 100000);
  std::size_t size() const { return elements.size(); }
  std::size_t dimension() const { return elements.empty() ? 0 : elements.front().rows(); }
};

struct BurnsideReport {
  Integer order;
  Integer order_prime; ///< largest factor of |G| coprime to the characteristic
  std::size_t dimension;
  Integer d;
  bool hypothesis_holds; ///< g^d = 1 for every g of order prime to the characteristic
  std::size_t violations;
  std::vector<Integer> element_orders; ///< sorted distinct orders
  Integer bound;                     ///< d^n
  bool conclusion_holds;             ///< |G|' divides d^n
};

/// A failing hypothesis is reported in the result (HypothesisFails is the code
/// the CLI attaches). InternalConsistency if the hypothesis holds but the
/// conclusion does not. GroupTooLarge above 10^5 elements.
BurnsideReport burnside_divisibility_check(const FiniteMatrixGroup &g, const Integer &d);

enum class BoundKind { Torus, ReductivePerfect, GeneralLag, SemisimpleCharP, SeveriBrauer, QuadricOdd, QuadricEven };
std::optional<BoundKind> parse_bound_kind(const std::string &name);
std::string bound_kind_name(BoundKind kind);

struct BoundQuery {
  BoundKind kind;
  std::optional<long> n, r, N, p;
  std::optional<Integer> pi1_order;
};

struct BoundResult {
  Integer divisor_bound;
  std::optional<Integer> exponent_bound;
  std::string meaning;
};

/// MissingParameter when a required parameter is absent; PreconditionFailed
/// for out-of-range values.
BoundResult bound_calculator(const BoundQuery &q);

/// order = l p^m with p not dividing l.
std::pair<Integer, unsigned> pi1_order_split(const Integer &order, const Integer &p);

} // namespace aniso::bounds
