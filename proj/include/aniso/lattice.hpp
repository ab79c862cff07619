#pragma once

#include "aniso/integer.hpp"

#include <string>
#include <vector>

namespace aniso::lattice {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  static IntMatrix from_rows(const std::vector<std::vector<long>> &rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Integer> &entries() const { return data_; }

  IntMatrix operator*(const IntMatrix &o) const;
  IntMatrix operator+(const IntMatrix &o) const;
  IntMatrix operator-(const IntMatrix &o) const;
  std::vector<Integer> apply(const std::vector<Integer> &v) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix &o) const = default;
  bool operator<(const IntMatrix &o) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_identity() const;
  /// Bareiss fraction-free determinant.
  Integer determinant() const;
  /// Inverse of a matrix with determinant +-1.
  IntMatrix unimodular_inverse() const;
  IntMatrix column(std::size_t j) const;
  /// Rows stacked vertically; all blocks must share a column count.
  static IntMatrix vstack(const std::vector<IntMatrix> &blocks);

  std::string to_string() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix U, D, V;
  /// V^{-1}, maintained alongside V.
  IntMatrix V_inverse;
  std::size_t rank = 0;
  /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
  std::vector<Integer> diagonal;
};

/// U * m * V = D with U, V unimodular and D diagonal with a divisibility chain.
SmithForm smith_normal_form(const IntMatrix &m);

/// Row-style Hermite normal form: upper staircase, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix &m);

/// Basis of {x in Z^cols : m x = 0}, one basis vector per row, Hermite reduced.
IntMatrix integer_kernel(const IntMatrix &m);

struct AbelianGroupStructure {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  /// Order of the torsion part (the whole group when free_rank is 0).
  Integer order() const;
  Integer exponent() const;
  std::string to_string() const;
};

/// Structure of Z^k / (column span of relations); the relations matrix has k rows.
AbelianGroupStructure cokernel_structure(const IntMatrix &relations);

/// Fixed vectors of every generator, as rows of a Hermite-reduced basis.
IntMatrix fixed_sublattice(const std::vector<IntMatrix> &generators, std::size_t n);

struct ModularInvariants {
  AbelianGroupStructure structure;
  /// generators[i] has order structure.invariant_factors[i]; entries in [0, d).
  std::vector<std::vector<Integer>> generators;
};

/// {v in (Z/d)^n : g v = v for every generator}.
ModularInvariants kernel_mod_d(const std::vector<IntMatrix> &generators, std::size_t n, const Integer &d);

/// Elements of <generators> in BFS order from the identity.
std::vector<IntMatrix> group_closure(const std::vector<IntMatrix> &generators, std::size_t cap = 10000);

/// Z^1(Theta, Z^n) / B^1(Theta, Z^n) for the group listed in `elements`
/// (closure output) generated by `generators`.
AbelianGroupStructure h1_of_theta_module(const std::vector<IntMatrix> &generators,
                                         const std::vector<IntMatrix> &elements, std::size_t n);

} // namespace aniso::lattice
