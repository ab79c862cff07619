#pragma once

#include "aniso/lattice.hpp"

#include <string>
#include <vector>

namespace aniso::torus {

using lattice::AbelianGroupStructure;
using lattice::IntMatrix;

/// Cocharacter lattice Z^rank with a finite group Theta acting through the
/// given generators. Construction materializes Theta.
struct TorusModel {
  std::size_t rank = 0;
  std::vector<IntMatrix> theta_generators;
  std::vector<IntMatrix> theta_elements;
  std::string label;
  /// |G| for norm-quotient tori, 0 otherwise.
  std::size_t galois_degree = 0;

  static TorusModel make(std::size_t rank, std::vector<IntMatrix> generators, std::string label,
                         std::size_t cap = 10000);
  Integer theta_order() const { return Integer(theta_elements.size()); }
};

bool is_anisotropic(const TorusModel &t);

struct TorsionReport {
  Integer d;
  AbelianGroupStructure group;
  std::vector<std::vector<Integer>> witnesses;
  /// Exponent of the group divides |Theta|.
  bool divisibility_check = false;
};

/// Theta-invariants of Z^n / d Z^n. A nonzero `characteristic` dividing d is
/// rejected with CharDividesOrder.
TorsionReport torsion_points(const TorusModel &t, const Integer &d, const Integer &characteristic = 0);

struct AveragingCertificate {
  Integer d;
  Integer theta_order;
  std::vector<Integer> vbar;
  std::vector<Integer> lift;
  std::vector<Integer> w;
  bool w_is_zero = false;
  /// |Theta| * vbar = 0 in Z^n / d Z^n.
  bool theta_order_kills_vbar = false;
  bool d_divides_theta_order = false;
};

/// Sums the Theta-orbit of a lift of vbar and records the consequences.
AveragingCertificate averaging_certificate(const TorusModel &t, const Integer &d, const std::vector<Integer> &vbar);

/// Exact additive order of v in (Z/d)^n.
Integer order_mod(const std::vector<Integer> &v, const Integer &d);

/// Every Theta-invariant vector of (Z/d)^n by exhaustive search; fails with
/// GroupTooLarge when d^n exceeds `cap`.
std::vector<std::vector<Integer>> invariant_cosets(const TorusModel &t, const Integer &d, const Integer &cap = 1000000);

// Finite groups for norm-quotient tori. Elements are 0..m-1 with 0 the identity.
using MultiplicationTable = std::vector<std::vector<std::size_t>>;
using Permutation = std::vector<std::size_t>;

MultiplicationTable cyclic_table(std::size_t m);
MultiplicationTable dihedral_table(std::size_t m);
/// Permutations of {0..k-1} in lexicographic order, composed as (a*b)(x) = a(b(x)).
MultiplicationTable symmetric_table(std::size_t k);
MultiplicationTable quaternion_table();
MultiplicationTable direct_product_table(const MultiplicationTable &a, const MultiplicationTable &b);
/// Checks closure, identity at 0, inverses and associativity.
void validate_table(const MultiplicationTable &table);
/// g -> h g for each generator h.
std::vector<Permutation> left_regular_generators(const MultiplicationTable &table, const std::vector<std::size_t> &gens);
/// Indices of a small generating set, greedily chosen.
std::vector<std::size_t> generating_set(const MultiplicationTable &table);

/// Z[G] / Z(sum of g) with the regular action; basis the images of g != e.
TorusModel norm_quotient_torus(const std::vector<Permutation> &regular_generators, std::string label = "");
TorusModel norm_quotient_torus_from_table(const MultiplicationTable &table, std::string label = "");

struct ExponentRow {
  Integer d;
  AbelianGroupStructure group;
  bool divides_theta_order = false;
  /// Only meaningful when galois_degree is set.
  bool divides_group_order = true;
};

struct ExponentReport {
  std::vector<ExponentRow> rows;
  bool all_ok = true;
};

/// Torsion exponents for every 2 <= d <= d_range not divisible by the characteristic.
ExponentReport exponent_bound_check(const TorusModel &t, const Integer &d_range, const Integer &characteristic = 0);

} // namespace aniso::torus
