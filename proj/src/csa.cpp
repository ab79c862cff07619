#include "aniso/csa.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace aniso::csa {

namespace {

FieldElement one_of(const FieldDescriptor &f) { return FieldElement::from_integer(f, 1); }

// C(j, m) * k! / (k - m)! as an integer.
Integer weyl_coefficient(long j, long k, long m) {
  Integer c = 1;
  for (long t = 0; t < m; ++t) c = c * (j - t) * (k - t);
  for (long t = 2; t <= m; ++t) c /= t;
  return c;
}

} // namespace

bool AlgebraSpec::operator==(const AlgebraSpec &o) const {
  return kind == o.kind && base == o.base && n == o.n && a == o.a && b == o.b;
}

std::string AlgebraSpec::to_string() const {
  if (kind == AlgebraKind::WeylModP)
    return "Weyl algebra mod " + std::to_string(n) + " over " + base.to_string();
  return "(" + a.to_string() + ", " + b.to_string() + ")_" + std::to_string(n) + " over " + base.to_string();
}

SpecPtr symbol_algebra(const FieldDescriptor &base, long n, const FieldElement &a, const FieldElement &b) {
  if (n < 2) fail(ErrorCode::SchemaError, "symbol algebra degree must be at least 2");
  if (a.field() != base || b.field() != base) fail(ErrorCode::DescriptorMismatch, "parameters must lie in the base field");
  if (a.is_zero() || b.is_zero()) fail(ErrorCode::SchemaError, "symbol algebra parameters must be nonzero");
  if (base.characteristic() != 0 && divides(base.characteristic(), Integer(n)))
    fail(ErrorCode::RootOfUnityMissing, "no primitive " + std::to_string(n) + "-th root of unity in characteristic " +
                                            base.characteristic().get_str());
  FieldElement zeta = FieldElement::root_of_unity(base, n);
  auto spec = std::make_shared<AlgebraSpec>(AlgebraSpec{AlgebraKind::Symbol, base, n, a, b, {}});
  FieldElement z = one_of(base);
  for (long k = 0; k < n; ++k) {
    spec->zeta_powers.push_back(z);
    z = z * zeta;
  }
  return spec;
}

SpecPtr weyl_mod_p(long p) {
  if (p < 2 || !is_prime(p)) fail(ErrorCode::SchemaError, std::to_string(p) + " is not prime");
  auto f = FieldDescriptor::function_field(FieldDescriptor::prime_field(p), {"x", "y"});
  return std::make_shared<AlgebraSpec>(AlgebraSpec{AlgebraKind::WeylModP, f, p, FieldElement::variable(f, "y"),
                                                   FieldElement::variable(f, "x"), {}});
}

AlgebraElement::AlgebraElement(SpecPtr spec)
    : spec_(std::move(spec)), c_(static_cast<std::size_t>(spec_->n * spec_->n), FieldElement(spec_->base)) {}

AlgebraElement AlgebraElement::scalar(SpecPtr spec, const FieldElement &c) { return monomial(std::move(spec), 0, 0, c); }

AlgebraElement AlgebraElement::monomial(SpecPtr spec, long i, long j, const FieldElement &c) {
  if (i < 0 || j < 0) fail(ErrorCode::SchemaError, "negative exponent in algebra monomial");
  AlgebraElement r(spec);
  FieldElement coef = c;
  while (i >= spec->n) {
    coef *= spec->a;
    i -= spec->n;
  }
  while (j >= spec->n) {
    coef *= spec->b;
    j -= spec->n;
  }
  r.coeff(i, j) = coef;
  return r;
}

void AlgebraElement::check_same(const AlgebraElement &o) const {
  if (spec_ != o.spec_ && !(*spec_ == *o.spec_))
    fail(ErrorCode::SpecMismatch, "elements of " + spec_->to_string() + " and " + o.spec_->to_string());
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement &o) const {
  check_same(o);
  AlgebraElement r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement &o) const {
  check_same(o);
  AlgebraElement r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

AlgebraElement AlgebraElement::scale(const FieldElement &c) const {
  AlgebraElement r = *this;
  for (auto &x : r.c_) x *= c;
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement &o) const {
  check_same(o);
  const long n = spec_->n;
  const auto &S = *spec_;
  AlgebraElement r(spec_);
  // Powers a^0, a^1 and b^0, b^1 suffice: exponents stay below 2n.
  auto add_term = [&](long i, long j, FieldElement c) {
    if (i >= n) {
      c *= S.a;
      i -= n;
    }
    if (j >= n) {
      c *= S.b;
      j -= n;
    }
    r.coeff(i, j) += c;
  };
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const FieldElement &x = coeff(i, j);
      if (x.is_zero()) continue;
      for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l) {
          const FieldElement &y = o.coeff(k, l);
          if (y.is_zero()) continue;
          FieldElement xy = x * y;
          if (S.kind == AlgebraKind::Symbol) {
            // v^j u^k = zeta^{jk} u^k v^j
            add_term(i + k, j + l, xy * S.zeta_powers[static_cast<std::size_t>((j * k) % n)]);
          } else {
            // v^j u^k = sum_m C(j,m) k!/(k-m)! u^{k-m} v^{j-m}
            for (long m = 0; m <= std::min(j, k); ++m) {
              Integer w = mod(weyl_coefficient(j, k, m), Integer(n));
              if (w == 0) continue;
              add_term(i + k - m, j - m + l, xy * FieldElement::from_integer(S.base, w));
            }
          }
        }
    }
  return r;
}

AlgebraElement AlgebraElement::pow(long e) const {
  if (e < 0) fail(ErrorCode::PreconditionFailed, "negative algebra powers are not supported");
  AlgebraElement result = scalar(spec_, one_of(spec_->base)), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool AlgebraElement::operator==(const AlgebraElement &o) const { return *spec_ == *o.spec_ && c_ == o.c_; }

bool AlgebraElement::is_zero() const {
  for (const auto &x : c_)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<FieldElement> AlgebraElement::scalar_value() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return std::nullopt;
  return c_[0];
}

std::string AlgebraElement::to_string() const {
  std::string out;
  const long n = spec_->n;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const FieldElement &c = coeff(i, j);
      if (c.is_zero()) continue;
      std::string mono;
      auto power = [](const char *s, long e) { return e == 1 ? std::string(s) : std::string(s) + "^" + std::to_string(e); };
      if (i) mono += power("u", i);
      if (j) mono += (mono.empty() ? "" : "*") + power("v", j);
      std::string cs = c.to_string();
      bool wrap = cs.find_first_of("+-/ ", 1) != std::string::npos;
      std::string term;
      if (mono.empty()) term = cs;
      else if (c.is_one()) term = mono;
      else term = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
      out += (out.empty() ? "" : " + ") + term;
    }
  return out.empty() ? "0" : out;
}

AlgebraElement algebra_multiply(const AlgebraElement &x, const AlgebraElement &y) { return x * y; }

AlgebraElement element_from_terms(SpecPtr spec, const std::vector<std::pair<std::pair<long, long>, std::string>> &terms) {
  AlgebraElement r(spec);
  for (const auto &[ij, text] : terms)
    r = r + AlgebraElement::monomial(spec, ij.first, ij.second, scalars::parse_element(spec->base, text));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Elements of K[u]/(u^n - a) as coefficient vectors.
using RingElt = std::vector<FieldElement>;

RingElt ring_mul(const AlgebraSpec &S, const RingElt &x, const RingElt &y) {
  const long n = S.n;
  RingElt r(static_cast<std::size_t>(n), FieldElement(S.base));
  for (long i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (long k = 0; k < n; ++k) {
      if (y[k].is_zero()) continue;
      FieldElement c = x[i] * y[k];
      if (i + k >= n) r[i + k - n] += c * S.a;
      else r[i + k] += c;
    }
  }
  return r;
}

// Laplace expansion along rows, memoized on the set of used columns.
RingElt ring_det(const AlgebraSpec &S, const std::vector<std::vector<RingElt>> &m) {
  const std::size_t n = m.size();
  std::map<unsigned, RingElt> memo;
  RingElt zero(n, FieldElement(S.base));
  std::function<RingElt(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned used) -> RingElt {
    if (row == n) {
      RingElt one = zero;
      one[0] = one_of(S.base);
      return one;
    }
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    RingElt acc = zero;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      bool nonzero = false;
      for (const auto &x : m[row][c]) nonzero = nonzero || !x.is_zero();
      if (nonzero) {
        RingElt t = ring_mul(S, m[row][c], rec(row + 1, used | (1u << c)));
        for (std::size_t k = 0; k < n; ++k) acc[k] = sign > 0 ? acc[k] + t[k] : acc[k] - t[k];
      }
      sign = -sign;
    }
    memo[used] = acc;
    return acc;
  };
  return rec(0, 0);
}

} // namespace

FieldElement reduced_norm(const AlgebraElement &x) {
  const auto &S = *x.spec();
  if (S.kind != AlgebraKind::Symbol) fail(ErrorCode::SpecMismatch, "reduced_norm is defined here for symbol algebras");
  const long n = S.n;
  // Column j: x v^j = sum_l v^l f_l(u); u^i v^l = zeta^{-il} v^l u^i.
  std::vector<std::vector<RingElt>> m(static_cast<std::size_t>(n),
                                      std::vector<RingElt>(static_cast<std::size_t>(n), RingElt(n, FieldElement(S.base))));
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i)
      for (long k = 0; k < n; ++k) {
        const FieldElement &c = x.coeff(i, k);
        if (c.is_zero()) continue;
        long l = k + j;
        FieldElement t = c;
        if (l >= n) {
          t *= S.b;
          l -= n;
        }
        t *= S.zeta_powers[static_cast<std::size_t>((n - (i * l) % n) % n)];
        m[l][j][i] += t;
      }
  RingElt det = ring_det(S, m);
  for (long k = 1; k < n; ++k)
    if (!det[k].is_zero()) fail(ErrorCode::InternalConsistency, "reduced norm is not central");
  return det[0];
}

FMatrix left_regular_matrix(const AlgebraElement &x) {
  const auto &S = *x.spec();
  const long n = S.n;
  FMatrix m(S.base, static_cast<std::size_t>(n * n), static_cast<std::size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      AlgebraElement col = x * AlgebraElement::monomial(x.spec(), i, j, one_of(S.base));
      for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l) m(static_cast<std::size_t>(k * n + l), static_cast<std::size_t>(i * n + j)) = col.coeff(k, l);
    }
  return m;
}

bool is_invertible(const AlgebraElement &x) {
  if (x.spec()->kind == AlgebraKind::Symbol) return !reduced_norm(x).is_zero();
  return !left_regular_matrix(x).determinant().is_zero();
}

AlgebraElement inverse(const AlgebraElement &x) {
  const auto &S = *x.spec();
  AlgebraElement power = x;
  for (long k = 1; k <= S.n; ++k) {
    if (auto c = power.scalar_value()) {
      if (c->is_zero()) break;
      return (k == 1 ? AlgebraElement::scalar(x.spec(), one_of(S.base)) : x.pow(k - 1)).scale(c->inverse());
    }
    power = power * x;
  }
  FMatrix m = left_regular_matrix(x);
  if (m.determinant().is_zero()) fail(ErrorCode::NotInvertible, x.to_string() + " is not a unit");
  std::vector<FieldElement> e(m.rows(), FieldElement(S.base));
  e[0] = one_of(S.base);
  auto y = m.inverse().apply(e);
  AlgebraElement r(x.spec());
  for (long i = 0; i < S.n; ++i)
    for (long j = 0; j < S.n; ++j) r.coeff(i, j) = y[static_cast<std::size_t>(i * S.n + j)];
  return r;
}

AlgebraElement projective_normalized(const AlgebraElement &x) {
  for (long i = 0; i < x.spec()->n; ++i)
    for (long j = 0; j < x.spec()->n; ++j)
      if (!x.coeff(i, j).is_zero()) return x.scale(x.coeff(i, j).inverse());
  return x;
}

std::vector<AlgebraElement> projective_closure(const std::vector<AlgebraElement> &generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorCode::SchemaError, "at least one generator is required");
  std::vector<AlgebraElement> out{AlgebraElement::scalar(generators[0].spec(), one_of(generators[0].spec()->base))};
  std::vector<AlgebraElement> gens;
  for (const auto &g : generators) {
    if (!is_invertible(g)) fail(ErrorCode::NotInvertible, g.to_string() + " is not a unit");
    gens.push_back(projective_normalized(g));
  }
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto &g : gens) {
      AlgebraElement y = projective_normalized(out[head] * g);
      if (std::find(out.begin(), out.end(), y) != out.end()) continue;
      if (out.size() >= cap) fail(ErrorCode::ClosureCapExceeded, "projective closure exceeded " + std::to_string(cap));
      out.push_back(std::move(y));
    }
  return out;
}

pairing::LiftOps<AlgebraElement> algebra_lift_ops() {
  return {[](const AlgebraElement &a, const AlgebraElement &b) { return a * b; },
          [](const AlgebraElement &a) { return inverse(a); }, [](const AlgebraElement &a, long e) { return a.pow(e); },
          [](const AlgebraElement &a) { return a.scalar_value(); }};
}

namespace {

using scalars::Poly;

// Strips the largest monomial dividing p; returns the exponents removed.
std::vector<long> strip_monomial(Poly &p) {
  std::vector<long> e(p.nvars(), 0);
  if (p.is_zero() || p.nvars() == 0) return e;
  std::vector<std::uint32_t> mins(p.nvars(), UINT32_MAX);
  for (const auto &t : p.terms())
    for (std::size_t v = 0; v < p.nvars(); ++v) mins[v] = std::min(mins[v], t.exps[v]);
  Poly q(p.base(), p.nvars());
  for (const auto &t : p.terms()) {
    auto ex = t.exps;
    for (std::size_t v = 0; v < ex.size(); ++v) ex[v] -= mins[v];
    q = q + Poly::monomial(p.base(), ex, t.coeff);
  }
  p = q;
  for (std::size_t v = 0; v < e.size(); ++v) e[v] = mins[v];
  return e;
}

NormResidueClass classify(const FieldElement &norm, long n) {
  const auto &f = norm.field();
  Poly num = norm.numerator(), den = norm.denominator();
  auto en = strip_monomial(num);
  auto ed = strip_monomial(den);
  Poly mono = Poly::constant(f.base_field(), f.nvars(), f.base_field()->one());
  bool has_monomial = false;
  for (std::size_t v = 0; v < en.size(); ++v) {
    long r = ((en[v] - ed[v]) % n + n) % n;
    if (r) has_monomial = true;
    mono = mono * Poly::variable(f.base_field(), f.nvars(), v).pow(static_cast<unsigned long>(r));
  }
  FieldElement lc = FieldElement::from_base(f, num.leading_coeff());
  FieldElement rest = FieldElement::from_polys(f, num, den) / lc;
  FieldElement c = lc;
  if (try_root(c, n)) c = one_of(f);
  FieldElement rep = c * FieldElement::from_polys(f, mono, Poly::constant(f.base_field(), f.nvars(), f.base_field()->one())) * rest;
  bool normalized = rest.is_one();
  std::optional<bool> trivial;
  if (rep.is_one()) trivial = true;
  else if (normalized && (has_monomial || scalars::provably_not_power(c, n))) trivial = false;
  else if (scalars::provably_not_power(rep, n)) trivial = false;
  return {norm, rep, normalized, trivial};
}

} // namespace

NormResidueClass norm_residue_class(const AlgebraElement &x) {
  FieldElement nrm = reduced_norm(x);
  if (nrm.is_zero()) fail(ErrorCode::NotInvertible, x.to_string() + " has zero reduced norm");
  if (x.scalar_value()) return {nrm, one_of(nrm.field()), true, true};
  return classify(nrm, x.spec()->n);
}

std::optional<bool> same_norm_class(const AlgebraElement &x, const AlgebraElement &y) {
  FieldElement nx = reduced_norm(x), ny = reduced_norm(y);
  if (nx.is_zero() || ny.is_zero()) fail(ErrorCode::NotInvertible, "zero reduced norm");
  auto t = classify(nx / ny, x.spec()->n).trivial;
  if (!t) return std::nullopt;
  return *t;
}

namespace {

bool is_variable(const FieldElement &c) {
  for (const auto &name : c.field().variables())
    if (c == FieldElement::variable(c.field(), name)) return true;
  return false;
}

} // namespace

ProjectiveOrder finite_order_in_projective_units(const AlgebraElement &x, long bound) {
  const auto &S = *x.spec();
  if (!is_invertible(x)) fail(ErrorCode::NotInvertible, x.to_string() + " is not a unit");
  if (bound <= 0) bound = S.n * S.n;
  AlgebraElement power = x;
  for (long k = 1; k <= bound; ++k) {
    if (power.scalar_value()) {
      bool generic = S.kind == AlgebraKind::Symbol && is_variable(S.a) && is_variable(S.b) && S.a != S.b;
      if (generic && S.n % k != 0)
        fail(ErrorCode::InternalConsistency, "torsion element of order " + std::to_string(k) +
                                                 " in a division symbol algebra of degree " + std::to_string(S.n));
      return {true, k};
    }
    if (k < bound) power = power * x;
  }
  return {false, std::nullopt};
}

// ---------------------------------------------------------------------------

bool WeylCertificate::all_ok() const {
  return u_prime_nilpotent && v_prime_nilpotent && u_prime_strictly_lower && commutator_identity && u_power_is_y &&
         v_power_is_x && monomial_rank == static_cast<std::size_t>(p * p);
}

WeylCertificate weyl_split_verification(long p) {
  if (p > 7) fail(ErrorCode::PrimeTooLarge, "split verification is limited to p <= 7, got " + std::to_string(p));
  if (p < 2 || !is_prime(p)) fail(ErrorCode::SchemaError, std::to_string(p) + " is not prime");
  auto f = FieldDescriptor::function_field(FieldDescriptor::prime_field(p), {"X", "Y"});
  const auto P = static_cast<std::size_t>(p);
  FMatrix up(f, P, P), vp(f, P, P);
  // basis 1, z, ..., z^{p-1}; u' = multiplication by z, v' = d/dz
  for (std::size_t i = 0; i + 1 < P; ++i) {
    up(i + 1, i) = one_of(f);
    vp(i, i + 1) = FieldElement::from_integer(f, static_cast<long>(i + 1));
  }
  FieldElement X = FieldElement::variable(f, "X"), Y = FieldElement::variable(f, "Y");
  FMatrix u = up + FMatrix::scalar(Y, P), v = vp + FMatrix::scalar(X, P);
  FMatrix I = FMatrix::identity(f, P);
  WeylCertificate c{p, f, up, vp, u, v, false, false, true, false, false, false, 0};
  c.u_prime_nilpotent = up.pow(p).is_zero();
  c.v_prime_nilpotent = vp.pow(p).is_zero();
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = i; j < P; ++j)
      if (!up(i, j).is_zero()) c.u_prime_strictly_lower = false;
  c.commutator_identity = (vp * up - up * vp) == I && (v * u - u * v) == I;
  c.u_power_is_y = u.pow(p) == FMatrix::scalar(Y.pow(p), P);
  c.v_power_is_x = v.pow(p) == FMatrix::scalar(X.pow(p), P);
  FMatrix span(f, P * P, P * P);
  FMatrix ui = I;
  for (std::size_t i = 0; i < P; ++i) {
    FMatrix m = ui;
    for (std::size_t j = 0; j < P; ++j) {
      for (std::size_t k = 0; k < P * P; ++k) span(i * P + j, k) = m.entries()[k];
      m = m * vp;
    }
    ui = ui * up;
  }
  c.monomial_rank = span.rank();
  return c;
}

// ---------------------------------------------------------------------------

namespace {

bool is_irreducible(const UPoly &f, long p) {
  const long d = f.degree();
  if (d <= 1) return d == 1;
  auto field = f.field();
  // trial division by every monic polynomial of degree 1..d/2
  for (long e = 1; e <= d / 2; ++e) {
    std::vector<long> digits(static_cast<std::size_t>(e), 0);
    while (true) {
      std::vector<FieldElement> cs;
      for (long x : digits) cs.push_back(FieldElement::from_integer(field, x));
      cs.push_back(one_of(field));
      if (f.divmod(UPoly(field, cs)).second.is_zero()) return false;
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == p - 1) digits[i++] = 0;
      if (i == digits.size()) break;
      ++digits[i];
    }
  }
  return true;
}

} // namespace

std::vector<UPoly> irreducible_polynomials(long p, std::size_t m) {
  if (p < 2 || !is_prime(p)) fail(ErrorCode::SchemaError, std::to_string(p) + " is not prime");
  auto field = FieldDescriptor::prime_field(p);
  std::vector<UPoly> out;
  for (long d = 1; out.size() < m; ++d) {
    std::vector<long> digits(static_cast<std::size_t>(d), 0);
    while (out.size() < m) {
      std::vector<FieldElement> cs;
      for (long x : digits) cs.push_back(FieldElement::from_integer(field, x));
      cs.push_back(one_of(field));
      UPoly f(field, cs);
      if (is_irreducible(f, p)) out.push_back(f);
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == p - 1) digits[i++] = 0;
      if (i == digits.size()) break;
      ++digits[i];
    }
  }
  return out;
}

TorsionSubgroupReport inseparable_torsion_subgroup(long p, const std::vector<UPoly> &generators) {
  auto spec = weyl_mod_p(p);
  auto fp = FieldDescriptor::prime_field(p);
  const std::size_t m = generators.size();
  Integer combos = pow(Integer(p), static_cast<unsigned long>(m));
  if (combos > 100000) fail(ErrorCode::GroupTooLarge, "p^m = " + combos.get_str() + " exceeds the enumeration cap");
  TorsionSubgroupReport r{p, generators, {}, true, 0, 1, true};
  std::vector<AlgebraElement> elems;
  for (const auto &g : generators) {
    if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "generator polynomials must be nonzero");
    if (g.field() != fp) fail(ErrorCode::DescriptorMismatch, "generators must be polynomials over F_" + std::to_string(p));
    AlgebraElement e(spec);
    for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
      const auto &c = g.coeffs()[k];
      if (c.is_zero()) continue;
      FieldElement lifted = FieldElement::from_base(spec->base, c.constant_value());
      e = e + AlgebraElement::monomial(spec, 0, static_cast<long>(k), lifted);
    }
    if (!e.pow(p).scalar_value()) fail(ErrorCode::InternalConsistency, "f(v)^p is not central");
    r.class_orders.push_back(e.scalar_value() ? 1 : p);
    elems.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (elems[i] * elems[j] != elems[j] * elems[i]) r.commute = false;
  // [prod f_i^{e_i}] is trivial iff the product lies in F_p(v^p), i.e. has zero derivative.
  std::vector<long> e(m, 0);
  long kernel = 0;
  while (true) {
    UPoly prod(fp, {one_of(fp)});
    for (std::size_t i = 0; i < m; ++i)
      for (long t = 0; t < e[i]; ++t) prod = prod * generators[i];
    if (prod.derivative().is_zero()) ++kernel;
    std::size_t i = 0;
    while (i < m && e[i] == p - 1) e[i++] = 0;
    if (i == m) break;
    ++e[i];
  }
  Integer k = kernel;
  long kdim = 0;
  while (divides(Integer(p), k) && k > 1) {
    k /= p;
    ++kdim;
  }
  if (k != 1) fail(ErrorCode::InternalConsistency, "relation count is not a power of p");
  r.rank = static_cast<long>(m) - kdim;
  r.order = pow(Integer(p), static_cast<unsigned long>(r.rank));
  for (long o : r.class_orders) r.elementary_abelian = r.elementary_abelian && (o == 1 || o == p);
  r.elementary_abelian = r.elementary_abelian && r.commute;
  return r;
}

SeparabilityReport separability_check(const AlgebraSpec &spec, const scalars::AlgebraicElement &elt) {
  if (elt.base != spec.base)
    fail(ErrorCode::DescriptorMismatch, "element over " + elt.base.to_string() + ", algebra center " + spec.base.to_string());
  auto mp = scalars::minimal_polynomial(elt);
  SeparabilityReport r{mp.separable, mp.polynomial, mp.irreducible_certified, std::nullopt};
  if (!mp.separable) r.witness_order = spec.base.characteristic();
  return r;
}

} // namespace aniso::csa
