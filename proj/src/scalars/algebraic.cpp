#include "aniso/scalars/algebraic.hpp"

#include "aniso/error.hpp"

#include <map>

namespace aniso::scalars {

std::vector<FieldElement> artin_schreier_image(const FieldDescriptor &field, const Integer &cap) {
  if (field.characteristic() != 2 || field.nvars() != 0)
    fail(ErrorCode::WrongCharacteristic, "Artin-Schreier image needs a finite field of characteristic 2, got " +
                                             field.to_string());
  const auto &base = field.base_field();
  std::map<Integer, FieldElement> image;
  for (const auto &c : base->elements(cap)) {
    BaseElem v = base->sub(base->mul(c, c), c);
    image.emplace(base->index_of(v), FieldElement::from_base(field, v));
  }
  std::vector<FieldElement> out;
  for (auto &[idx, e] : image) out.push_back(e);
  return out;
}

namespace {

std::optional<Rational> rational_root(const Rational &q, const Integer &k) {
  unsigned long e = k.get_ui();
  Integer num = q.get_num(), den = q.get_den();
  bool negative = num < 0;
  if (negative) {
    if (e % 2 == 0) return std::nullopt;
    num = -num;
  }
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), e) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), e) == 0) return std::nullopt;
  Rational r(negative ? Integer(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

} // namespace

bool provably_not_power(const FieldElement &c, const Integer &q) {
  if (c.is_zero()) return false;
  for (long d : c.variable_degrees())
    if (d % q.get_si() != 0) return true;
  if (!c.is_constant()) return false;
  const auto &base = c.field().base_field();
  BaseElem v = c.constant_value();
  if (base->characteristic() == 0) {
    if (base->degree() != 1) return false;
    return !rational_root(v[0], q);
  }
  Integer order = base->order();
  if (q == base->characteristic()) return false;
  Integer g = gcd(q, Integer(order - 1));
  return !base->is_one(base->pow(v, Integer((order - 1) / g)));
}

std::optional<FieldElement> try_root(const FieldElement &c, const Integer &q) {
  const auto &f = c.field();
  if (c.is_zero()) return c;
  for (long d : c.variable_degrees())
    if (d % q.get_si() != 0) return std::nullopt;
  auto monomial_root = [&](const Poly &p) -> std::optional<Poly> {
    if (p.terms().size() != 1) return std::nullopt;
    const Term &t = p.leading();
    Exponents e = t.exps;
    for (auto &x : e) {
      if (x % q.get_ui() != 0) return std::nullopt;
      x /= static_cast<std::uint32_t>(q.get_ui());
    }
    const auto &base = f.base_field();
    std::optional<BaseElem> root;
    if (base->characteristic() == 0) {
      if (base->degree() != 1) {
        if (base->is_one(t.coeff)) root = base->one();
      } else if (auto r = rational_root(t.coeff[0], q)) {
        root = BaseElem{*r};
      }
    } else if (base->order() <= 4096) {
      for (const auto &x : base->elements(4096))
        if (base->pow(x, q) == t.coeff) {
          root = x;
          break;
        }
    }
    if (!root) return std::nullopt;
    return Poly::monomial(base, std::move(e), *root);
  };
  auto rn = monomial_root(c.numerator());
  auto rd = monomial_root(c.denominator());
  if (!rn || !rd) return std::nullopt;
  FieldElement r = FieldElement::from_polys(f, *rn, *rd);
  if (r.pow(q) == c) return r;
  return std::nullopt;
}

MinimalPolynomial minimal_polynomial(const AlgebraicElement &elt) {
  if (!elt.relation || elt.relation->is_zero())
    fail(ErrorCode::NotAlgebraic, "no nonzero polynomial relation supplied");
  const UPoly &rel = *elt.relation;
  if (rel.field() != elt.base) fail(ErrorCode::DescriptorMismatch, "relation is not over the stated base field");
  if (rel.degree() < 1) fail(ErrorCode::NotAlgebraic, "relation " + rel.to_string() + " has no roots");
  UPoly f = rel.monic();
  bool certified = f.degree() == 1;
  if (!certified && is_prime(Integer(f.degree()))) {
    bool binomial = true;
    for (long k = 1; k < f.degree(); ++k)
      if (!f.coeff(static_cast<std::size_t>(k)).is_zero()) binomial = false;
    if (binomial && provably_not_power(-f.coeff(0), Integer(f.degree()))) certified = true;
  }
  bool separable = gcd(f, f.derivative()).degree() == 0;
  return MinimalPolynomial{f, separable, certified};
}

} // namespace aniso::scalars
