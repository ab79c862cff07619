#include "aniso/scalars/matrix.hpp"

#include "aniso/error.hpp"

#include <map>

namespace aniso::scalars {

FMatrix::FMatrix(FieldDescriptor field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, FieldElement(field)) {}

FMatrix::FMatrix(FieldDescriptor field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) fail(ErrorCode::SchemaError, "matrix entry count does not match dimensions");
  for (const auto &e : data_)
    if (e.field() != field_) fail(ErrorCode::DescriptorMismatch, "matrix entry outside " + field_.to_string());
}

FMatrix FMatrix::identity(const FieldDescriptor &field, std::size_t n) {
  return scalar(FieldElement::from_integer(field, 1), n);
}

FMatrix FMatrix::scalar(const FieldElement &c, std::size_t n) {
  FMatrix m(c.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

FMatrix FMatrix::diagonal(const std::vector<FieldElement> &d) {
  if (d.empty()) fail(ErrorCode::PreconditionFailed, "empty diagonal");
  FMatrix m(d.front().field(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

FMatrix FMatrix::from_integers(const FieldDescriptor &field, const std::vector<std::vector<long>> &rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  FMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorCode::SchemaError, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = FieldElement::from_integer(field, rows[i][j]);
  }
  return m;
}

void FMatrix::check_same(const FMatrix &o) const {
  if (field_ != o.field_) fail(ErrorCode::DescriptorMismatch, "matrices over different fields");
}

FMatrix FMatrix::operator*(const FMatrix &o) const {
  check_same(o);
  if (cols_ != o.rows_) fail(ErrorCode::PreconditionFailed, "matrix dimension mismatch in product");
  FMatrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto &a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

FMatrix FMatrix::operator+(const FMatrix &o) const {
  check_same(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::PreconditionFailed, "matrix dimension mismatch in sum");
  FMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

FMatrix FMatrix::operator-(const FMatrix &o) const { return *this + o.scale(FieldElement::from_integer(field_, -1)); }

FMatrix FMatrix::scale(const FieldElement &c) const {
  FMatrix r = *this;
  for (auto &e : r.data_) e = e * c;
  return r;
}

std::vector<FieldElement> FMatrix::apply(const std::vector<FieldElement> &v) const {
  if (v.size() != cols_) fail(ErrorCode::PreconditionFailed, "vector length does not match matrix");
  std::vector<FieldElement> out(rows_, FieldElement(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

FMatrix FMatrix::transpose() const {
  FMatrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool FMatrix::operator==(const FMatrix &o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<std::size_t> FMatrix::echelon(FieldElement *det) {
  std::vector<std::size_t> pivots;
  FieldElement d = FieldElement::from_integer(field_, 1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && (*this)(p, col).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != row) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      d = -d;
    }
    FieldElement inv = (*this)(row, col).inverse();
    d = d * (*this)(row, col);
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || (*this)(i, col).is_zero()) continue;
      FieldElement f = (*this)(i, col);
      for (std::size_t j = col; j < cols_; ++j)
        if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  if (det) *det = pivots.size() == rows_ ? d : FieldElement(field_);
  return pivots;
}

FieldElement FMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorCode::PreconditionFailed, "determinant of a non-square matrix");
  FMatrix m = *this;
  FieldElement d(field_);
  m.echelon(&d);
  return d;
}

std::size_t FMatrix::rank() const {
  FMatrix m = *this;
  return m.echelon().size();
}

std::vector<std::vector<FieldElement>> FMatrix::nullspace() const {
  FMatrix m = *this;
  auto pivots = m.echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(cols_, FieldElement(field_));
    v[free] = FieldElement::from_integer(field_, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

FMatrix FMatrix::inverse() const {
  if (rows_ != cols_) fail(ErrorCode::NotInvertible, "non-square matrix");
  const std::size_t n = rows_;
  FMatrix aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = FieldElement::from_integer(field_, 1);
  }
  auto pivots = aug.echelon();
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorCode::NotInvertible, "singular matrix");
  FMatrix r(field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

FMatrix FMatrix::pow(long e) const {
  if (rows_ != cols_) fail(ErrorCode::PreconditionFailed, "power of a non-square matrix");
  if (e < 0) return inverse().pow(-e);
  FMatrix result = identity(field_, rows_), b = *this;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return result;
}

bool FMatrix::is_zero() const {
  for (const auto &e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool FMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

std::optional<FieldElement> FMatrix::scalar_value() const {
  if (rows_ != cols_ || rows_ == 0 || !is_diagonal()) return std::nullopt;
  for (std::size_t i = 1; i < rows_; ++i)
    if ((*this)(i, i) != (*this)(0, 0)) return std::nullopt;
  return (*this)(0, 0);
}

bool FMatrix::is_identity() const {
  auto s = scalar_value();
  return s && s->is_one();
}

FMatrix FMatrix::projective_normalized() const {
  for (const auto &e : data_)
    if (!e.is_zero()) return e.is_one() ? *this : scale(e.inverse());
  return *this;
}

std::string FMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

std::vector<FMatrix> matrix_group_closure(const std::vector<FMatrix> &generators, std::size_t cap, bool projective) {
  if (generators.empty()) fail(ErrorCode::PreconditionFailed, "no generators");
  const auto &first = generators.front();
  auto key = [](const FMatrix &m) {
    std::vector<std::string> k;
    k.reserve(m.entries().size());
    for (const auto &e : m.entries()) k.push_back(e.to_string());
    return k;
  };
  auto norm = [&](const FMatrix &m) { return projective ? m.projective_normalized() : m; };
  std::vector<FMatrix> gens;
  for (const auto &g : generators) {
    if (g.rows() != g.cols() || g.rows() != first.rows()) fail(ErrorCode::PreconditionFailed, "generators must be square of equal size");
    if (g.determinant().is_zero()) fail(ErrorCode::NotInvertible, "generator is singular");
    gens.push_back(norm(g));
  }
  std::vector<FMatrix> elements{FMatrix::identity(first.field(), first.rows())};
  std::map<std::vector<std::string>, std::size_t> seen{{key(elements[0]), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto &g : gens) {
      FMatrix next = norm(elements[head] * g);
      auto k = key(next);
      if (seen.count(k)) continue;
      if (elements.size() >= cap)
        fail(ErrorCode::ClosureCapExceeded, "group closure exceeded " + std::to_string(cap) + " elements");
      seen.emplace(std::move(k), elements.size());
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

} // namespace aniso::scalars
