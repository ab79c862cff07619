#pragma once

#include "aniso/scalars/upoly.hpp"

#include <optional>
#include <vector>

namespace aniso::scalars {

/// {c^2 - c : c in F_{2^m}}, sorted by element index. Fails with
/// FieldTooLarge when the field has more than `cap` elements.
std::vector<FieldElement> artin_schreier_image(const FieldDescriptor &field, const Integer &cap = 16);

/// An element known only through a polynomial relation f(elt) = 0 over its base.
struct AlgebraicElement {
  FieldDescriptor base;
  std::optional<UPoly> relation;
};

struct MinimalPolynomial {
  UPoly polynomial;
  bool separable;
  /// Irreducibility was proved (degree one, or a prime-degree binomial whose
  /// constant is not a power); otherwise the monic relation is returned as is.
  bool irreducible_certified;
};

MinimalPolynomial minimal_polynomial(const AlgebraicElement &elt);

/// True when c is certainly not a q-th power in its field (q prime); false
/// means "could not rule it out" for fields where no test applies.
bool provably_not_power(const FieldElement &c, const Integer &q);

/// An exact q-th root of c when one is found.
std::optional<FieldElement> try_root(const FieldElement &c, const Integer &q);

} // namespace aniso::scalars
