#pragma once

#include "aniso/scalars/field.hpp"

#include <string>
#include <vector>

namespace aniso::scalars {

/// Dense matrix over a FieldDescriptor field, row-major.
class FMatrix {
public:
  FMatrix(FieldDescriptor field, std::size_t rows, std::size_t cols);
  FMatrix(FieldDescriptor field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries);

  static FMatrix identity(const FieldDescriptor &field, std::size_t n);
  static FMatrix scalar(const FieldElement &c, std::size_t n);
  static FMatrix diagonal(const std::vector<FieldElement> &d);
  /// Integer entries, row by row.
  static FMatrix from_integers(const FieldDescriptor &field, const std::vector<std::vector<long>> &rows);

  const FieldDescriptor &field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldElement &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  FieldElement &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<FieldElement> &entries() const { return data_; }

  FMatrix operator*(const FMatrix &o) const;
  FMatrix operator+(const FMatrix &o) const;
  FMatrix operator-(const FMatrix &o) const;
  FMatrix scale(const FieldElement &c) const;
  std::vector<FieldElement> apply(const std::vector<FieldElement> &v) const;
  FMatrix transpose() const;
  bool operator==(const FMatrix &o) const;
  bool operator!=(const FMatrix &o) const { return !(*this == o); }

  FieldElement determinant() const;
  std::size_t rank() const;
  /// Basis of {v : M v = 0}.
  std::vector<std::vector<FieldElement>> nullspace() const;
  FMatrix inverse() const;
  FMatrix pow(long e) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  /// The scalar c when M = c I.
  std::optional<FieldElement> scalar_value() const;
  /// Representative of the projective class with first nonzero entry 1.
  FMatrix projective_normalized() const;

  std::string to_string() const;

private:
  void check_same(const FMatrix &o) const;
  /// Row echelon form in place; returns pivot columns.
  std::vector<std::size_t> echelon(FieldElement *det = nullptr);

  FieldDescriptor field_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> data_;
};

/// All elements of the group generated by `generators` (square, invertible)
/// in deterministic BFS order starting from the identity. With `projective`
/// set, matrices are compared up to scalars via projective_normalized().
/// Fails with ClosureCapExceeded when more than `cap` elements appear.
std::vector<FMatrix> matrix_group_closure(const std::vector<FMatrix> &generators, std::size_t cap,
                                          bool projective = false);

} // namespace aniso::scalars
