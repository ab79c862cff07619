#include "aniso/lattice.hpp"

#include "aniso/error.hpp"

#include <map>

namespace aniso::lattice {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) fail(ErrorCode::SchemaError, "matrix entry count does not match dimensions");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>> &rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorCode::SchemaError, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (cols_ != o.rows_) fail(ErrorCode::PreconditionFailed, "matrix dimension mismatch in product");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer &a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::PreconditionFailed, "matrix dimension mismatch in sum");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::PreconditionFailed, "matrix dimension mismatch in difference");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer> &v) const {
  if (v.size() != cols_) fail(ErrorCode::PreconditionFailed, "vector length does not match matrix");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool IntMatrix::operator<(const IntMatrix &o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return data_[i] < o.data_[i];
  return false;
}

bool IntMatrix::is_zero() const {
  for (const auto &x : data_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const { return is_square() && *this == identity(rows_); }

Integer IntMatrix::determinant() const {
  if (!is_square()) fail(ErrorCode::PreconditionFailed, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix IntMatrix::unimodular_inverse() const {
  if (!is_square()) fail(ErrorCode::NotUnimodular, "non-square matrix");
  SmithForm s = smith_normal_form(*this);
  if (s.rank != rows_ || s.diagonal.back() != 1) fail(ErrorCode::NotUnimodular, "matrix is not invertible over Z");
  // U m V = I, so m^{-1} = V U.
  return s.V * s.U;
}

IntMatrix IntMatrix::column(std::size_t j) const {
  IntMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::vstack(const std::vector<IntMatrix> &blocks) {
  if (blocks.empty()) return IntMatrix();
  std::size_t cols = blocks[0].cols(), rows = 0;
  for (const auto &b : blocks) {
    if (b.cols() != cols) fail(ErrorCode::PreconditionFailed, "vstack column mismatch");
    rows += b.rows();
  }
  std::vector<Integer> data;
  data.reserve(rows * cols);
  for (const auto &b : blocks) data.insert(data.end(), b.entries().begin(), b.entries().end());
  return IntMatrix(rows, cols, std::move(data));
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).get_str();
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------

namespace {

Integer tdiv(const Integer &a, const Integer &b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct SmithWork {
  IntMatrix a, U, V, Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
    for (std::size_t k = 0; k < Vinv.cols(); ++k) std::swap(Vinv(i, k), Vinv(j, k));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer &c) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) += c * a(j, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) += c * U(j, k);
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer &c) {
    for (std::size_t k = 0; k < a.rows(); ++k) a(k, i) += c * a(k, j);
    for (std::size_t k = 0; k < V.rows(); ++k) V(k, i) += c * V(k, j);
    for (std::size_t k = 0; k < Vinv.cols(); ++k) Vinv(j, k) -= c * Vinv(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(cols)};
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    bool exhausted = false;
    while (true) {
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Integer &x = w.a(i, j);
          if (x == 0) continue;
          if (pr == rows || abs(x) < best) {
            best = abs(x);
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) {
        exhausted = true;
        break;
      }
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a(i, t) == 0) continue;
        w.add_row(i, t, -tdiv(w.a(i, t), w.a(t, t)));
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a(t, j) == 0) continue;
        w.add_col(j, t, -tdiv(w.a(t, j), w.a(t, t)));
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(w.a(t, t), w.a(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      w.add_row(t, bad, 1);
    }
    if (exhausted) break;
    if (w.a(t, t) < 0) w.negate_row(t);
  }
  SmithForm s{w.U, w.a, w.V, w.Vinv, t, {}};
  for (std::size_t i = 0; i < t; ++i) s.diagonal.push_back(s.D(i, i));
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix &m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols; ++k) std::swap(a(i, k), a(j, k));
  };
  auto add_row = [&](std::size_t i, std::size_t j, const Integer &c) {
    for (std::size_t k = 0; k < cols; ++k) a(i, k) += c * a(j, k);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (p == rows || abs(a(i, c)) < abs(a(p, c)))) p = i;
      if (p == rows) break;
      swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        add_row(i, r, -tdiv(a(i, c), a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows || a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t k = 0; k < cols; ++k) a(r, k) = -a(r, k);
    for (std::size_t i = 0; i < r; ++i) add_row(i, r, -fdiv(a(i, c), a(r, c)));
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix &m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t n = m.cols();
  IntMatrix basis(n - s.rank, n);
  for (std::size_t k = s.rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(k - s.rank, i) = s.V(i, k);
  return hermite_normal_form(basis);
}

Integer AbelianGroupStructure::order() const {
  Integer o = 1;
  for (const auto &d : invariant_factors) o *= d;
  return o;
}

Integer AbelianGroupStructure::exponent() const {
  return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
}

std::string AbelianGroupStructure::to_string() const {
  std::string out;
  for (const auto &d : invariant_factors) out += (out.empty() ? "" : " x ") + ("Z/" + d.get_str());
  if (free_rank > 0) out += (out.empty() ? "" : " x ") + ("Z^" + std::to_string(free_rank));
  return out.empty() ? "0" : out;
}

AbelianGroupStructure cokernel_structure(const IntMatrix &relations) {
  SmithForm s = smith_normal_form(relations);
  AbelianGroupStructure g;
  for (const auto &d : s.diagonal)
    if (d > 1) g.invariant_factors.push_back(d);
  g.free_rank = relations.rows() - s.rank;
  return g;
}

namespace {

void check_generators(const std::vector<IntMatrix> &generators, std::size_t n) {
  for (const auto &g : generators) {
    if (g.rows() != n || g.cols() != n)
      fail(ErrorCode::PreconditionFailed, "generator is not " + std::to_string(n) + "x" + std::to_string(n));
    Integer d = g.determinant();
    if (d != 1 && d != -1) fail(ErrorCode::NotUnimodular, "generator " + g.to_string() + " has determinant " + d.get_str());
  }
}

IntMatrix stacked_differences(const std::vector<IntMatrix> &generators, std::size_t n) {
  if (generators.empty()) return IntMatrix(1, n);
  std::vector<IntMatrix> blocks;
  for (const auto &g : generators) blocks.push_back(g - IntMatrix::identity(n));
  return IntMatrix::vstack(blocks);
}

} // namespace

IntMatrix fixed_sublattice(const std::vector<IntMatrix> &generators, std::size_t n) {
  check_generators(generators, n);
  return integer_kernel(stacked_differences(generators, n));
}

ModularInvariants kernel_mod_d(const std::vector<IntMatrix> &generators, std::size_t n, const Integer &d) {
  if (d < 2) fail(ErrorCode::InvalidModulus, "modulus must be at least 2, got " + d.get_str());
  for (const auto &g : generators)
    if (g.rows() != n || g.cols() != n)
      fail(ErrorCode::PreconditionFailed, "generator is not " + std::to_string(n) + "x" + std::to_string(n));
  SmithForm s = smith_normal_form(stacked_differences(generators, n));
  // In coordinates w = V^{-1} v the condition reads s_i w_i = 0 mod d.
  std::vector<Integer> orders;
  std::vector<std::vector<Integer>> cyclic;
  for (std::size_t i = 0; i < n; ++i) {
    Integer g = i < s.rank ? gcd(s.diagonal[i], d) : d;
    if (g == 1) continue;
    Integer step = d / g;
    std::vector<Integer> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = mod(s.V(k, i) * step, d);
    orders.push_back(g);
    cyclic.push_back(std::move(v));
  }
  ModularInvariants out;
  if (orders.empty()) return out;
  const std::size_t k = orders.size();
  IntMatrix diag(k, k);
  for (std::size_t i = 0; i < k; ++i) diag(i, i) = orders[i];
  SmithForm t = smith_normal_form(diag);
  IntMatrix uinv = t.U.unimodular_inverse();
  for (std::size_t i = 0; i < k; ++i) {
    if (t.diagonal[i] == 1) continue;
    std::vector<Integer> v(n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < n; ++c) v[c] += uinv(j, i) * cyclic[j][c];
    for (auto &x : v) x = mod(x, d);
    out.structure.invariant_factors.push_back(t.diagonal[i]);
    out.generators.push_back(std::move(v));
  }
  return out;
}

std::vector<IntMatrix> group_closure(const std::vector<IntMatrix> &generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorCode::PreconditionFailed, "no generators");
  const std::size_t n = generators[0].rows();
  check_generators(generators, n);
  std::vector<IntMatrix> elements{IntMatrix::identity(n)};
  std::map<IntMatrix, std::size_t> seen{{elements[0], 0}};
  for (std::size_t head = 0; head < elements.size(); ++head)
    for (const auto &g : generators) {
      IntMatrix next = elements[head] * g;
      if (seen.count(next)) continue;
      if (elements.size() >= cap)
        fail(ErrorCode::ClosureCapExceeded, "group closure exceeded " + std::to_string(cap) + " elements");
      seen.emplace(next, elements.size());
      elements.push_back(std::move(next));
    }
  return elements;
}

AbelianGroupStructure h1_of_theta_module(const std::vector<IntMatrix> &generators,
                                         const std::vector<IntMatrix> &elements, std::size_t n) {
  check_generators(generators, n);
  const std::size_t N = elements.size();
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t k = 0; k < N; ++k) index.emplace(elements[k], k);
  auto find = [&](const IntMatrix &g) {
    auto it = index.find(g);
    if (it == index.end()) fail(ErrorCode::PreconditionFailed, "element list is not closed under the generators");
    return it->second;
  };
  const std::size_t identity = find(IntMatrix::identity(n));

  // Unknowns: f(elements[k]) occupies columns k*n .. k*n+n-1.
  const std::size_t S = generators.size();
  IntMatrix eq(N * S * n + n, N * n);
  std::size_t row = 0;
  for (std::size_t k = 0; k < N; ++k)
    for (const auto &s : generators) {
      std::size_t gs = find(elements[k] * s), si = find(s);
      for (std::size_t i = 0; i < n; ++i, ++row) {
        eq(row, gs * n + i) += 1;
        eq(row, k * n + i) -= 1;
        for (std::size_t j = 0; j < n; ++j) eq(row, si * n + j) -= elements[k](i, j);
      }
    }
  for (std::size_t i = 0; i < n; ++i, ++row) eq(row, identity * n + i) = 1;

  SmithForm s = smith_normal_form(eq);
  const std::size_t z = N * n - s.rank;
  // Coboundaries f_v(g) = g v - v, one column per basis vector v = e_j.
  IntMatrix cob(N * n, n);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cob(k * n + i, j) = elements[k](i, j) - (i == j ? 1 : 0);
  IntMatrix coords = s.V_inverse * cob;
  IntMatrix rel(z, n);
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = 0; j < n; ++j) rel(i, j) = coords(s.rank + i, j);
  return cokernel_structure(rel);
}

} // namespace aniso::lattice
