#include "doctest.h"

#include "aniso/error.hpp"
#include "aniso/lattice.hpp"

#include <functional>
#include <random>
#include <set>

using namespace aniso;
using namespace aniso::lattice;

namespace {

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Product of elementary matrices: unimodular by construction.
IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> c(-2, 2);
  for (int step = 0; step < 6; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long k = c(rng);
    for (std::size_t col = 0; col < n; ++col) m(i, col) += k * m(j, col);
  }
  return m;
}

// gcd of all k x k minors, by cofactor expansion over chosen rows/columns.
Integer minor_gcd(const IntMatrix &m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rs, cs;
  std::function<Integer(std::vector<std::size_t>, std::vector<std::size_t>)> det =
      [&](std::vector<std::size_t> r, std::vector<std::size_t> c) -> Integer {
    if (r.size() == 1) return m(r[0], c[0]);
    Integer total = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto c2 = c;
      c2.erase(c2.begin() + static_cast<long>(j));
      auto r2 = std::vector<std::size_t>(r.begin() + 1, r.end());
      Integer term = m(r[0], c[j]) * det(r2, c2);
      total += (j % 2 ? -term : term);
    }
    return total;
  };
  std::function<void(std::size_t, std::vector<std::size_t> &, std::size_t, std::vector<std::vector<std::size_t>> &)>
      choose = [&](std::size_t start, std::vector<std::size_t> &cur, std::size_t limit,
                   std::vector<std::vector<std::size_t>> &out) {
        if (cur.size() == k) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = start; i < limit; ++i) {
          cur.push_back(i);
          choose(i + 1, cur, limit, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<std::size_t>> rsets, csets;
  std::vector<std::size_t> cur;
  choose(0, cur, m.rows(), rsets);
  choose(0, cur, m.cols(), csets);
  for (const auto &r : rsets)
    for (const auto &c : csets) g = gcd(g, det(r, c));
  return g;
}

std::vector<Integer> invariant_factors_oracle(const IntMatrix &m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = minor_gcd(m, k);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// All v in (Z/d)^n fixed by every generator.
std::vector<std::vector<Integer>> invariant_vectors_oracle(const std::vector<IntMatrix> &gens, std::size_t n, long d) {
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> v(n, 0);
  while (true) {
    bool fixed = true;
    for (const auto &g : gens) {
      auto w = g.apply(v);
      for (std::size_t i = 0; i < n && fixed; ++i)
        if (mod(w[i] - v[i], d) != 0) fixed = false;
    }
    if (fixed) out.push_back(v);
    std::size_t i = 0;
    while (i < n && v[i] == d - 1) v[i++] = 0;
    if (i == n) break;
    v[i] += 1;
  }
  return out;
}

// H^1 of a cyclic group <t> of order m: ker(N) / (t - 1)Z^n with N = sum of powers.
AbelianGroupStructure cyclic_h1_oracle(const IntMatrix &t, std::size_t m) {
  const std::size_t n = t.rows();
  IntMatrix norm(n, n), power = IntMatrix::identity(n);
  for (std::size_t k = 0; k < m; ++k) {
    norm = norm + power;
    power = power * t;
  }
  IntMatrix ker = integer_kernel(norm);  // rows span ker N
  IntMatrix img = t - IntMatrix::identity(n);
  const std::size_t z = ker.rows();
  if (z == 0) return {};
  IntMatrix rel(z, n);
  IntMatrix kt = ker.transpose();  // n x z, full column rank
  for (std::size_t col = 0; col < n; ++col) {
    // kt * c = img[:, col], solved over Q
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(z + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < z; ++j) a[i][j] = kt(i, j);
      a[i][z] = img(i, col);
    }
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < z; ++c) {
      std::size_t p = r;
      while (p < n && a[p][c] == 0) ++p;
      REQUIRE(p < n);
      std::swap(a[p], a[r]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r || a[i][c] == 0) continue;
        Rational f = a[i][c] / a[r][c];
        for (std::size_t j = c; j <= z; ++j) a[i][j] -= f * a[r][j];
      }
      piv.push_back(c);
      ++r;
    }
    for (std::size_t i = 0; i < z; ++i) {
      Rational c = a[i][z] / a[i][i];
      REQUIRE(c.get_den() == 1);
      rel(i, col) = c.get_num();
    }
  }
  return cokernel_structure(rel);
}

IntMatrix perm3() { return IntMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}); }

template <class F> void expect_code(F fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected error " << error_code_name(code));
  } catch (const Error &e) {
    CHECK(e.code() == code);
  }
}

} // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::identity(2));
  CHECK(s.D == IntMatrix::identity(2));
  s = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(s.D == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  CHECK(s.U * IntMatrix::from_rows({{2, 4}, {6, 8}}) * s.V == s.D);
  s = smith_normal_form(IntMatrix(2, 3));
  CHECK(s.D.is_zero());
  CHECK(s.rank == 0);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m = random_matrix(rng, r, c, -50, 50);
    if (trial % 5 == 0 && r > 1)  // force rank deficiency
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = 3 * m(0, j);
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK((s.V * s.V_inverse).is_identity());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) CHECK(divides(s.diagonal[i], s.diagonal[i + 1]));
    for (const auto &d : s.diagonal) CHECK(d > 0);
    if (r <= 4 && c <= 4) CHECK(s.diagonal == invariant_factors_oracle(m));
  }
}

TEST_CASE("hermite normal form and kernels") {
  auto h = hermite_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(h == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 3, 6, -9, 9);
    IntMatrix k = integer_kernel(m);
    CHECK(k.rows() == 3);
    CHECK((m * k.transpose()).is_zero());
    // Saturation: the kernel basis spans a primitive sublattice.
    auto s = smith_normal_form(k);
    for (const auto &d : s.diagonal) CHECK(d == 1);
  }
}

TEST_CASE("fixed sublattice") {
  CHECK(fixed_sublattice({IntMatrix::identity(3)}, 3) == IntMatrix::identity(3));
  CHECK(fixed_sublattice({IntMatrix::from_rows({{-1}})}, 1).rows() == 0);
  CHECK(fixed_sublattice({perm3()}, 3) == IntMatrix::from_rows({{1, 1, 1}}));
  expect_code([] { (void)fixed_sublattice({IntMatrix::from_rows({{2}})}, 1); }, ErrorCode::NotUnimodular);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix p = random_unimodular(rng, 3);
    IntMatrix g = p * perm3() * p.unimodular_inverse();
    IntMatrix basis = fixed_sublattice({g}, 3);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      std::vector<Integer> v(3);
      for (std::size_t j = 0; j < 3; ++j) v[j] = basis(i, j);
      CHECK(g.apply(v) == v);
    }
    CHECK(basis.rows() == 3 - smith_normal_form(g - IntMatrix::identity(3)).rank);
  }
}

TEST_CASE("invariants modulo d") {
  auto k = kernel_mod_d({IntMatrix::identity(1)}, 1, 5);
  CHECK(k.structure.invariant_factors == std::vector<Integer>{5});
  k = kernel_mod_d({IntMatrix::from_rows({{-1}})}, 1, 2);
  CHECK(k.structure.invariant_factors == std::vector<Integer>{2});
  CHECK(k.generators == std::vector<std::vector<Integer>>{{1}});
  CHECK(kernel_mod_d({IntMatrix::from_rows({{-1}})}, 1, 9).structure.is_trivial());
  expect_code([] { (void)kernel_mod_d({IntMatrix::identity(1)}, 1, 1); }, ErrorCode::InvalidModulus);

  std::mt19937_64 rng(5);
  std::vector<IntMatrix> bases = {perm3(), IntMatrix::from_rows({{0, -1, 0}, {1, -1, 0}, {0, 0, -1}}),
                                  IntMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}})};
  for (int trial = 0; trial < 24; ++trial) {
    IntMatrix p = random_unimodular(rng, 3);
    IntMatrix g = p * bases[static_cast<std::size_t>(trial) % bases.size()] * p.unimodular_inverse();
    long d = 2 + trial % 7;
    auto got = kernel_mod_d({g}, 3, d);
    auto brute = invariant_vectors_oracle({g}, 3, d);
    CHECK(got.structure.order() == Integer(brute.size()));
    CHECK(divides(got.structure.order(), pow(Integer(d), 3)));
    for (std::size_t i = 0; i < got.generators.size(); ++i) {
      const auto &v = got.generators[i];
      auto w = g.apply(v);
      for (std::size_t c = 0; c < 3; ++c) CHECK(mod(w[c] - v[c], d) == 0);
      // exact order equals the invariant factor
      Integer ord = 1;
      for (std::size_t c = 0; c < 3; ++c) ord = lcm(ord, Integer(d) / gcd(v[c], Integer(d)));
      CHECK(ord == got.structure.invariant_factors[i]);
    }
  }
}

TEST_CASE("group closure") {
  CHECK(group_closure({IntMatrix::from_rows({{-1}})}).size() == 2);
  CHECK(group_closure({perm3()}).size() == 3);
  auto rot = group_closure({IntMatrix::from_rows({{0, -1}, {1, 0}})});
  CHECK(rot.size() == 4);
  CHECK(rot[0].is_identity());
  expect_code([] { (void)group_closure({IntMatrix::from_rows({{1, 1}, {0, 1}})}, 50); }, ErrorCode::ClosureCapExceeded);
}

TEST_CASE("first cohomology") {
  auto triv = group_closure({IntMatrix::identity(2)});
  CHECK(h1_of_theta_module({IntMatrix::identity(2)}, triv, 2).is_trivial());
  auto neg = IntMatrix::from_rows({{-1}});
  auto h = h1_of_theta_module({neg}, group_closure({neg}), 1);
  CHECK(h.invariant_factors == std::vector<Integer>{2});
  CHECK(h.free_rank == 0);

  std::mt19937_64 rng(9);
  std::vector<IntMatrix> bases = {perm3(), IntMatrix::from_rows({{0, -1, 0}, {1, -1, 0}, {0, 0, -1}}),
                                  IntMatrix::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}),
                                  IntMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, -1}})};
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix p = random_unimodular(rng, 3);
    IntMatrix g = p * bases[static_cast<std::size_t>(trial) % bases.size()] * p.unimodular_inverse();
    auto elems = group_closure({g});
    auto got = h1_of_theta_module({g}, elems, 3);
    CHECK(got.free_rank == 0);
    CHECK(divides(got.exponent(), Integer(elems.size())));
    auto want = cyclic_h1_oracle(g, elems.size());
    CHECK(got.invariant_factors == want.invariant_factors);
  }
}
