#include "aniso/pairing.hpp"

#include "aniso/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace aniso::pairing {

using lattice::IntMatrix;

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> moduli) : moduli_(std::move(moduli)) {
  for (const auto &m : moduli_)
    if (m < 2) fail(ErrorCode::SchemaError, "cyclic factor orders must be at least 2, got " + m.get_str());
}

FiniteAbelianGroup FiniteAbelianGroup::invariant(std::vector<Integer> factors) {
  FiniteAbelianGroup g(std::move(factors));
  if (!g.is_normalized()) fail(ErrorCode::SchemaError, "invariant factors must form a divisibility chain");
  return g;
}

Integer FiniteAbelianGroup::order() const {
  Integer o = 1;
  for (const auto &m : moduli_) o *= m;
  return o;
}

Integer FiniteAbelianGroup::exponent() const {
  Integer e = 1;
  for (const auto &m : moduli_) e = lcm(e, m);
  return e;
}

bool FiniteAbelianGroup::is_normalized() const {
  for (std::size_t i = 0; i + 1 < moduli_.size(); ++i)
    if (!divides(moduli_[i], moduli_[i + 1])) return false;
  return true;
}

Element FiniteAbelianGroup::basis(std::size_t i) const {
  Element e = zero();
  e.at(i) = 1;
  return e;
}

Element FiniteAbelianGroup::reduce(Element x) const {
  if (x.size() != moduli_.size()) fail(ErrorCode::SchemaError, "element has the wrong number of coordinates");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], moduli_[i]);
  return x;
}

Element FiniteAbelianGroup::add(const Element &a, const Element &b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], moduli_[i]);
  return r;
}

Element FiniteAbelianGroup::scale(const Element &a, const Integer &k) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] * k, moduli_[i]);
  return r;
}

Integer FiniteAbelianGroup::element_order(const Element &a) const {
  Integer o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = lcm(o, moduli_[i] / gcd(mod(a[i], moduli_[i]), moduli_[i]));
  return o;
}

Integer FiniteAbelianGroup::index_of(const Element &a) const {
  Integer idx = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) idx = idx * moduli_[i] + mod(a[i], moduli_[i]);
  return idx;
}

Element FiniteAbelianGroup::element_at(Integer index) const {
  Element e(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    e[i] = mod(index, moduli_[i]);
    index /= moduli_[i];
  }
  return e;
}

Integer SubgroupBasis::order() const {
  Integer o = 1;
  for (const auto &x : orders) o *= x;
  return o;
}

SubgroupBasis subgroup_basis(const FiniteAbelianGroup &g, const std::vector<Element> &gens) {
  const std::size_t r = g.rank(), k = gens.size();
  SubgroupBasis out;
  if (k == 0 || r == 0) return out;
  // Relations among the generators: c with sum c_j h_j = 0, i.e. the projection
  // of ker [H | diag(m)] onto the first k coordinates.
  IntMatrix m(r, k + r);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < r; ++i) m(i, j) = gens[j].at(i);
  for (std::size_t i = 0; i < r; ++i) m(i, k + i) = g.moduli()[i];
  IntMatrix ker = lattice::integer_kernel(m);
  IntMatrix rel(k, ker.rows());
  for (std::size_t c = 0; c < ker.rows(); ++c)
    for (std::size_t j = 0; j < k; ++j) rel(j, c) = ker(c, j);
  auto s = lattice::smith_normal_form(rel);
  if (s.rank != k) fail(ErrorCode::InternalConsistency, "subgroup of a finite group has free rank");
  IntMatrix uinv = s.U.unimodular_inverse();
  for (std::size_t i = 0; i < k; ++i) {
    if (s.diagonal[i] == 1) continue;
    Element e = g.zero();
    for (std::size_t j = 0; j < k; ++j) e = g.add(e, g.scale(gens[j], uinv(j, i)));
    out.basis.push_back(std::move(e));
    out.orders.push_back(s.diagonal[i]);
  }
  return out;
}

Rational AlternatingPairing::evaluate(const Element &a, const Element &b) const {
  Rational v = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) v += Rational(a[i] * b[j]) * gram[i][j];
  }
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  v -= fl;
  return v;
}

std::string AlternatingPairing::to_string() const {
  std::string out = "factors [";
  for (std::size_t i = 0; i < group.rank(); ++i) out += (i ? ", " : "") + group.moduli()[i].get_str();
  out += "], gram [";
  for (std::size_t i = 0; i < gram.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < gram[i].size(); ++j) out += (j ? ", " : "") + gram[i][j].get_str();
    out += "]";
  }
  return out + "]";
}

namespace {

Rational frac(Rational q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  q -= fl;
  return q;
}

} // namespace

AlternatingPairing make_pairing(FiniteAbelianGroup group, std::vector<std::vector<Rational>> gram) {
  if (gram.size() != group.rank()) fail(ErrorCode::SchemaError, "gram matrix size does not match the group rank");
  for (auto &row : gram) {
    if (row.size() != group.rank()) fail(ErrorCode::SchemaError, "gram matrix is not square");
    for (auto &x : row) {
      x.canonicalize();
      x = frac(x);
    }
  }
  return AlternatingPairing{std::move(group), std::move(gram)};
}

Diagnostic validate_pairing(const AlternatingPairing &p) {
  const auto &m = p.group.moduli();
  const std::size_t k = m.size();
  auto bad = [](std::string why) { return Diagnostic{false, std::move(why)}; };
  if (p.gram.size() != k) return bad("gram matrix size does not match the group rank");
  for (std::size_t i = 0; i < k; ++i) {
    if (p.gram[i].size() != k) return bad("gram matrix is not square");
    for (std::size_t j = 0; j < k; ++j) {
      const Rational &b = p.gram[i][j];
      if (b < 0 || b >= 1) return bad("gram entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0,1)");
      if (frac(b * m[i]) != 0 || frac(b * m[j]) != 0)
        return bad("B(e" + std::to_string(i) + ", e" + std::to_string(j) + ") = " + b.get_str() +
                   " is not killed by the factor orders");
      if (frac(b + p.gram[j][i]) != 0)
        return bad("B(e" + std::to_string(i) + ", e" + std::to_string(j) + ") + B(e" + std::to_string(j) + ", e" +
                   std::to_string(i) + ") != 0");
    }
    if (p.gram[i][i] != 0) return bad("B(e" + std::to_string(i) + ", e" + std::to_string(i) + ") != 0");
  }
  if (p.group.order() <= 4096) {
    for (Integer idx = 0; idx < p.group.order(); ++idx) {
      Element g = p.group.element_at(idx);
      if (p.evaluate(g, g) != 0) return bad("B(g, g) != 0 for some g");
    }
  }
  return {};
}

bool is_isotropic(const AlternatingPairing &p, const std::vector<Element> &gens) {
  for (const auto &a : gens)
    for (const auto &b : gens)
      if (p.evaluate(a, b) != 0) return false;
  return true;
}

namespace {

/// Recursive step on an l-group H given by its invariant basis.
std::vector<Element> isotropic_in(const AlternatingPairing &p, const SubgroupBasis &h) {
  const auto &G = p.group;
  if (h.basis.empty()) return {};
  const Integer top = h.orders.back();

  // Element of maximal order with the smallest mixed-radix index.
  Element g;
  if (h.order() <= 65536) {
    std::vector<Integer> c(h.basis.size(), 0);
    while (true) {
      Element x = G.zero();
      for (std::size_t i = 0; i < c.size(); ++i) x = G.add(x, G.scale(h.basis[i], c[i]));
      if (G.element_order(x) == top && (g.empty() || G.index_of(x) < G.index_of(g))) g = x;
      std::size_t i = 0;
      while (i < c.size() && c[i] == h.orders[i] - 1) c[i++] = 0;
      if (i == c.size()) break;
      c[i] += 1;
    }
  } else {
    g = h.basis.back();
  }

  // Gamma' = kernel of h -> B(g, h) in (1/top)Z/Z.
  const std::size_t s = h.basis.size();
  IntMatrix row(1, s + 1);
  for (std::size_t i = 0; i < s; ++i) {
    Rational v = p.evaluate(g, h.basis[i]) * top;
    if (v.get_den() != 1) fail(ErrorCode::InternalConsistency, "pairing value has unexpected denominator");
    row(0, i) = v.get_num();
  }
  row(0, s) = top;
  IntMatrix ker = lattice::integer_kernel(row);
  std::vector<Element> prime_gens;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Element x = G.zero();
    for (std::size_t i = 0; i < s; ++i) x = G.add(x, G.scale(h.basis[i], ker(r, i)));
    prime_gens.push_back(std::move(x));
  }
  SubgroupBasis hp = subgroup_basis(G, prime_gens);

  // Complement of <g> in Gamma': lift a basis of Gamma'/<g> and correct each
  // lift by a multiple of g so that it keeps its quotient order.
  const std::size_t t = hp.basis.size();
  // coordinates of g in the basis of Gamma'
  Element gcoord;
  {
    std::vector<Integer> y(t, 0);
    bool found = false;
    while (!found) {
      Element x = G.zero();
      for (std::size_t j = 0; j < t; ++j) x = G.add(x, G.scale(hp.basis[j], y[j]));
      if (x == g) {
        found = true;
        break;
      }
      std::size_t j = 0;
      while (j < t && y[j] == hp.orders[j] - 1) y[j++] = 0;
      if (j == t) break;
      y[j] += 1;
    }
    if (!found) fail(ErrorCode::InternalConsistency, "g is not in its own orthogonal");
    gcoord = y;
  }
  IntMatrix rel(t, t + 1);
  for (std::size_t j = 0; j < t; ++j) {
    rel(j, j) = hp.orders[j];
    rel(j, t) = gcoord[j];
  }
  auto sq = lattice::smith_normal_form(rel);
  IntMatrix uinv = sq.U.unimodular_inverse();
  std::vector<Element> complement;
  for (std::size_t i = 0; i < t; ++i) {
    Integer eps = i < sq.rank ? sq.diagonal[i] : Integer(0);
    if (eps == 1) continue;
    if (eps == 0) fail(ErrorCode::InternalConsistency, "quotient of a finite group has free rank");
    Element x = G.zero();
    for (std::size_t j = 0; j < t; ++j) x = G.add(x, G.scale(hp.basis[j], uinv(j, i)));
    Element ex = G.scale(x, eps);
    Integer ti = -1;
    for (Integer k = 0; k < top; ++k)
      if (G.scale(g, k) == ex) {
        ti = k;
        break;
      }
    if (ti < 0 || !divides(eps, ti)) fail(ErrorCode::InternalConsistency, "<g> is not a direct summand");
    complement.push_back(G.add(x, G.scale(g, -(ti / eps))));
  }
  auto rest = isotropic_in(p, subgroup_basis(G, complement));
  rest.insert(rest.begin(), g);
  return rest;
}

} // namespace

Subgroup isotropic_subgroup(const AlternatingPairing &p) {
  auto diag = validate_pairing(p);
  if (!diag.valid) fail(ErrorCode::InvalidPairing, diag.reason);
  const auto &G = p.group;
  std::vector<Element> gens;
  for (const auto &[ell, e] : factorize(G.exponent())) {
    std::vector<Element> part;
    for (std::size_t i = 0; i < G.rank(); ++i) {
      Integer m = G.moduli()[i];
      Integer cofactor = m;
      while (divides(ell, cofactor)) cofactor /= ell;
      if (cofactor != m) part.push_back(G.scale(G.basis(i), cofactor));
    }
    auto lam = isotropic_in(p, subgroup_basis(G, part));
    gens.insert(gens.end(), lam.begin(), lam.end());
  }
  Subgroup out{gens, subgroup_basis(G, gens).order()};
  if (!is_isotropic(p, out.generators) || !divides(G.order(), out.order * out.order))
    fail(ErrorCode::InternalConsistency, "isotropic subgroup construction failed");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct BitsetHash {
  std::size_t operator()(const std::vector<std::uint64_t> &b) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : b) h = (h ^ w) * 1099511628211ULL;
    return h;
  }
};

} // namespace

BruteForceResult brute_force_isotropic_max(const AlternatingPairing &p, const Integer &cap, std::size_t visit_cap) {
  const auto &G = p.group;
  if (G.order() > cap) fail(ErrorCode::GroupTooLarge, "group of order " + G.order().get_str() + " exceeds the oracle cap");
  auto diag = validate_pairing(p);
  if (!diag.valid) fail(ErrorCode::InvalidPairing, diag.reason);
  const std::size_t N = G.order().get_ui(), k = G.rank();
  std::vector<std::int64_t> mod(k);
  for (std::size_t i = 0; i < k; ++i) mod[i] = G.moduli()[i].get_si();
  std::vector<std::vector<std::int64_t>> coords(N, std::vector<std::int64_t>(k));
  for (std::size_t x = 0; x < N; ++x) {
    std::size_t r = x;
    for (std::size_t i = 0; i < k; ++i) {
      coords[x][i] = static_cast<std::int64_t>(r % static_cast<std::size_t>(mod[i]));
      r /= static_cast<std::size_t>(mod[i]);
    }
  }
  auto index = [&](const std::vector<std::int64_t> &c) {
    std::size_t idx = 0;
    for (std::size_t i = k; i-- > 0;) idx = idx * static_cast<std::size_t>(mod[i]) + static_cast<std::size_t>(c[i]);
    return idx;
  };
  auto add = [&](std::size_t a, std::size_t b) {
    std::vector<std::int64_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = (coords[a][i] + coords[b][i]) % mod[i];
    return index(c);
  };
  // Integer form of the pairing: B(x, y) = (sum x_i y_j n_ij) / E mod 1.
  const std::int64_t E = G.exponent().get_si();
  std::vector<std::vector<std::int64_t>> n(k, std::vector<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational v = p.gram[i][j] * E;
      n[i][j] = v.get_num().get_si();
    }
  auto orthogonal = [&](std::size_t a, std::size_t b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!coords[a][i]) continue;
      for (std::size_t j = 0; j < k; ++j) s = (s + coords[a][i] * coords[b][j] % E * n[i][j]) % E;
    }
    return s == 0;
  };

  const std::size_t words = (N + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  struct Node {
    Bits members;
    std::vector<std::size_t> gens;
  };
  auto has = [](const Bits &b, std::size_t x) { return (b[x / 64] >> (x % 64)) & 1ULL; };
  auto set = [](Bits &b, std::size_t x) { b[x / 64] |= 1ULL << (x % 64); };

  Node root{Bits(words, 0), {}};
  set(root.members, 0);
  std::unordered_set<Bits, BitsetHash> visited{root.members};
  std::vector<Node> queue{root};
  BruteForceResult best{1, {}, 0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node cur = queue[head];
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < N; ++x)
      if (has(cur.members, x)) members.push_back(x);
    if (Integer(members.size()) > best.max_order) {
      best.max_order = members.size();
      best.witness.clear();
      for (auto g : cur.gens) best.witness.push_back(G.element_at(g));
    }
    Bits covered = cur.members;
    for (std::size_t y = 1; y < N; ++y) {
      if (has(covered, y)) continue;
      bool perp = orthogonal(y, y);
      for (std::size_t j = 0; perp && j < cur.gens.size(); ++j) perp = orthogonal(y, cur.gens[j]);
      if (!perp) continue;
      // y + H is one coset; skip its other representatives.
      for (auto h : members) set(covered, add(y, h));
      Node next{cur.members, cur.gens};
      next.gens.push_back(y);
      std::size_t multiple = y;
      while (!has(next.members, multiple)) {
        for (auto h : members) set(next.members, add(multiple, h));
        multiple = add(multiple, y);
      }
      if (visited.insert(next.members).second) {
        if (visited.size() > visit_cap)
          fail(ErrorCode::GroupTooLarge, "isotropic subgroup enumeration exceeded " + std::to_string(visit_cap));
        queue.push_back(std::move(next));
      }
    }
    queue[head].members.clear();
    queue[head].members.shrink_to_fit();
  }
  best.subgroups_visited = visited.size();
  return best;
}

LiftOps<scalars::FMatrix> matrix_lift_ops() {
  using scalars::FMatrix;
  return {[](const FMatrix &a, const FMatrix &b) { return a * b; }, [](const FMatrix &a) { return a.inverse(); },
          [](const FMatrix &a, long e) { return a.pow(e); }, [](const FMatrix &a) { return a.scalar_value(); }};
}

} // namespace aniso::pairing
