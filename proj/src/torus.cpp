#include "aniso/torus.hpp"

#include "aniso/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace aniso::torus {

TorusModel TorusModel::make(std::size_t rank, std::vector<IntMatrix> generators, std::string label, std::size_t cap) {
  if (rank == 0) fail(ErrorCode::PreconditionFailed, "torus rank must be positive");
  if (generators.empty()) generators.push_back(IntMatrix::identity(rank));
  for (const auto &g : generators)
    if (g.rows() != rank || g.cols() != rank)
      fail(ErrorCode::SchemaError, "theta generator is not " + std::to_string(rank) + "x" + std::to_string(rank));
  TorusModel t;
  t.rank = rank;
  t.theta_elements = lattice::group_closure(generators, cap);
  t.theta_generators = std::move(generators);
  t.label = std::move(label);
  return t;
}

bool is_anisotropic(const TorusModel &t) { return lattice::fixed_sublattice(t.theta_generators, t.rank).rows() == 0; }

TorsionReport torsion_points(const TorusModel &t, const Integer &d, const Integer &characteristic) {
  if (d < 2) fail(ErrorCode::InvalidModulus, "d must be at least 2, got " + d.get_str());
  if (characteristic > 0 && divides(characteristic, d))
    fail(ErrorCode::CharDividesOrder, "characteristic " + characteristic.get_str() + " divides d = " + d.get_str());
  auto inv = lattice::kernel_mod_d(t.theta_generators, t.rank, d);
  TorsionReport r;
  r.d = d;
  r.group = inv.structure;
  r.witnesses = inv.generators;
  r.divisibility_check = divides(r.group.exponent(), t.theta_order());
  return r;
}

Integer order_mod(const std::vector<Integer> &v, const Integer &d) {
  Integer ord = 1;
  for (const auto &x : v) ord = lcm(ord, d / gcd(mod(x, d), d));
  return ord;
}

namespace {

bool is_invariant_mod(const TorusModel &t, const std::vector<Integer> &v, const Integer &d) {
  for (const auto &g : t.theta_generators) {
    auto w = g.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mod(w[i] - v[i], d) != 0) return false;
  }
  return true;
}

} // namespace

AveragingCertificate averaging_certificate(const TorusModel &t, const Integer &d, const std::vector<Integer> &vbar) {
  if (d < 2) fail(ErrorCode::InvalidModulus, "d must be at least 2, got " + d.get_str());
  if (vbar.size() != t.rank) fail(ErrorCode::SchemaError, "vbar has the wrong length");
  if (!is_anisotropic(t)) fail(ErrorCode::NotAnisotropic, "torus '" + t.label + "' has nonzero fixed cocharacters");
  AveragingCertificate c;
  c.d = d;
  c.theta_order = t.theta_order();
  for (const auto &x : vbar) c.vbar.push_back(mod(x, d));
  if (!is_invariant_mod(t, c.vbar, d)) fail(ErrorCode::NotInvariant, "vbar is not Theta-invariant modulo d");
  Integer ord = order_mod(c.vbar, d);
  if (ord != d) fail(ErrorCode::OrderMismatch, "vbar has order " + ord.get_str() + ", expected " + d.get_str());
  c.lift = c.vbar;
  c.w.assign(t.rank, 0);
  for (const auto &theta : t.theta_elements) {
    auto tv = theta.apply(c.lift);
    for (std::size_t i = 0; i < t.rank; ++i) c.w[i] += tv[i];
  }
  c.w_is_zero = std::all_of(c.w.begin(), c.w.end(), [](const Integer &x) { return x == 0; });
  c.theta_order_kills_vbar = true;
  for (std::size_t i = 0; i < t.rank; ++i) {
    if (mod(c.w[i] - c.theta_order * c.vbar[i], d) != 0)
      fail(ErrorCode::InternalConsistency, "orbit sum does not reduce to |Theta| vbar");
    if (mod(c.theta_order * c.vbar[i], d) != 0) c.theta_order_kills_vbar = false;
  }
  c.d_divides_theta_order = divides(d, c.theta_order);
  if (!c.w_is_zero || !c.theta_order_kills_vbar || !c.d_divides_theta_order)
    fail(ErrorCode::InternalConsistency, "averaging argument failed on an anisotropic torus");
  return c;
}

std::vector<std::vector<Integer>> invariant_cosets(const TorusModel &t, const Integer &d, const Integer &cap) {
  if (d < 2) fail(ErrorCode::InvalidModulus, "d must be at least 2, got " + d.get_str());
  if (pow(d, t.rank) > cap)
    fail(ErrorCode::GroupTooLarge, "d^n = " + pow(d, t.rank).get_str() + " exceeds the enumeration cap");
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> v(t.rank, 0);
  while (true) {
    if (is_invariant_mod(t, v, d)) out.push_back(v);
    std::size_t i = 0;
    while (i < t.rank && v[i] == d - 1) v[i++] = 0;
    if (i == t.rank) break;
    v[i] += 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

MultiplicationTable cyclic_table(std::size_t m) {
  if (m == 0) fail(ErrorCode::PreconditionFailed, "group order must be positive");
  MultiplicationTable t(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return t;
}

MultiplicationTable dihedral_table(std::size_t m) {
  if (m < 1) fail(ErrorCode::PreconditionFailed, "dihedral order parameter must be positive");
  // Element r^i s^j is stored as i + m*j.
  const std::size_t order = 2 * m;
  MultiplicationTable t(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::size_t i1 = a % m, j1 = a / m, i2 = b % m, j2 = b / m;
      std::size_t i = j1 ? (i1 + m - i2) % m : (i1 + i2) % m;
      t[a][b] = i + m * (j1 ^ j2);
    }
  return t;
}

MultiplicationTable symmetric_table(std::size_t k) {
  if (k == 0) fail(ErrorCode::PreconditionFailed, "symmetric group degree must be positive");
  std::vector<Permutation> perms;
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const Permutation &q) {
    return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  MultiplicationTable t(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      Permutation c(k);
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index(c);
    }
  return t;
}

MultiplicationTable quaternion_table() {
  // Element s*4 + u: sign s in {+,-}, unit u in {1, i, j, k}.
  static const int unit_mul[4][4][2] = {{{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                         {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
                                         {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
                                         {{3, 0}, {2, 0}, {1, 1}, {0, 1}}};
  MultiplicationTable t(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      const int *e = unit_mul[a % 4][b % 4];
      std::size_t sign = (a / 4) ^ (b / 4) ^ static_cast<std::size_t>(e[1]);
      t[a][b] = sign * 4 + static_cast<std::size_t>(e[0]);
    }
  return t;
}

MultiplicationTable direct_product_table(const MultiplicationTable &a, const MultiplicationTable &b) {
  const std::size_t m = a.size(), n = b.size();
  MultiplicationTable t(m * n, std::vector<std::size_t>(m * n));
  for (std::size_t x = 0; x < m * n; ++x)
    for (std::size_t y = 0; y < m * n; ++y) t[x][y] = a[x / n][y / n] * n + b[x % n][y % n];
  return t;
}

void validate_table(const MultiplicationTable &table) {
  const std::size_t m = table.size();
  if (m == 0) fail(ErrorCode::SchemaError, "empty multiplication table");
  for (const auto &row : table) {
    if (row.size() != m) fail(ErrorCode::SchemaError, "multiplication table is not square");
    for (auto x : row)
      if (x >= m) fail(ErrorCode::SchemaError, "multiplication table entry out of range");
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (table[0][a] != a || table[a][0] != a) fail(ErrorCode::SchemaError, "element 0 is not the identity");
    std::set<std::size_t> row(table[a].begin(), table[a].end());
    if (row.size() != m) fail(ErrorCode::SchemaError, "multiplication table row is not a permutation");
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) fail(ErrorCode::SchemaError, "multiplication is not associative");
}

std::vector<Permutation> left_regular_generators(const MultiplicationTable &table, const std::vector<std::size_t> &gens) {
  std::vector<Permutation> out;
  for (auto h : gens) {
    if (h >= table.size()) fail(ErrorCode::SchemaError, "generator index out of range");
    Permutation p(table.size());
    for (std::size_t g = 0; g < table.size(); ++g) p[g] = table[h][g];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> generating_set(const MultiplicationTable &table) {
  const std::size_t m = table.size();
  std::vector<std::size_t> gens;
  std::vector<bool> in(m, false);
  in[0] = true;
  std::size_t covered = 1;
  auto close = [&] {
    std::vector<std::size_t> elems;
    for (std::size_t x = 0; x < m; ++x)
      if (in[x]) elems.push_back(x);
    for (std::size_t head = 0; head < elems.size(); ++head)
      for (auto g : gens) {
        std::size_t y = table[elems[head]][g];
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
        }
      }
    covered = elems.size();
  };
  for (std::size_t x = 1; x < m && covered < m; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    close();
  }
  return gens;
}

TorusModel norm_quotient_torus(const std::vector<Permutation> &regular_generators, std::string label) {
  if (regular_generators.empty()) fail(ErrorCode::TrivialGroup, "no group generators");
  const std::size_t m = regular_generators[0].size();
  if (m < 2) fail(ErrorCode::TrivialGroup, "norm-quotient torus needs |G| >= 2");
  for (const auto &p : regular_generators) {
    if (p.size() != m) fail(ErrorCode::SchemaError, "permutations of different degrees");
    std::set<std::size_t> img(p.begin(), p.end());
    if (img.size() != m || *img.rbegin() != m - 1) fail(ErrorCode::SchemaError, "generator is not a permutation");
  }
  // The permutation group must act simply transitively.
  std::set<Permutation> group;
  Permutation id(m);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> queue{id};
  group.insert(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto &g : regular_generators) {
      Permutation c(m);
      for (std::size_t x = 0; x < m; ++x) c[x] = g[queue[head][x]];
      if (group.insert(c).second) queue.push_back(c);
      if (group.size() > m) fail(ErrorCode::SchemaError, "permutations do not form a regular representation");
    }
  }
  std::set<std::size_t> orbit;
  for (const auto &p : group) orbit.insert(p[0]);
  if (group.size() != m || orbit.size() != m)
    fail(ErrorCode::SchemaError, "permutations do not form a regular representation");

  const std::size_t n = m - 1;
  std::vector<IntMatrix> gens;
  for (const auto &p : regular_generators) {
    IntMatrix a(n, n);
    for (std::size_t g = 1; g < m; ++g) {
      std::size_t image = p[g];
      if (image == 0)
        for (std::size_t i = 0; i < n; ++i) a(i, g - 1) = -1;
      else
        a(image - 1, g - 1) = 1;
    }
    gens.push_back(std::move(a));
  }
  if (label.empty()) label = "norm quotient torus, |G| = " + std::to_string(m);
  TorusModel t = TorusModel::make(n, std::move(gens), std::move(label));
  t.galois_degree = m;
  return t;
}

TorusModel norm_quotient_torus_from_table(const MultiplicationTable &table, std::string label) {
  validate_table(table);
  if (table.size() < 2) fail(ErrorCode::TrivialGroup, "norm-quotient torus needs |G| >= 2");
  return norm_quotient_torus(left_regular_generators(table, generating_set(table)), std::move(label));
}

ExponentReport exponent_bound_check(const TorusModel &t, const Integer &d_range, const Integer &characteristic) {
  if (!is_anisotropic(t)) fail(ErrorCode::NotAnisotropic, "torus '" + t.label + "' has nonzero fixed cocharacters");
  ExponentReport report;
  for (Integer d = 2; d <= d_range; ++d) {
    if (characteristic > 0 && divides(characteristic, d)) continue;
    auto tp = torsion_points(t, d, characteristic);
    ExponentRow row{d, tp.group, tp.divisibility_check, true};
    if (t.galois_degree) row.divides_group_order = divides(tp.group.exponent(), Integer(t.galois_degree));
    report.all_ok = report.all_ok && row.divides_theta_order && row.divides_group_order;
    report.rows.push_back(std::move(row));
  }
  return report;
}

} // namespace aniso::torus
