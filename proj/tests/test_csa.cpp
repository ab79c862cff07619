#include "doctest.h"

#include "aniso/csa.hpp"
#include "aniso/error.hpp"

#include <random>

using namespace aniso;
using namespace aniso::csa;
using scalars::parse_element;

namespace {

template <class F> void expect_code(F fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected error " << error_code_name(code));
  } catch (const Error &e) {
    CHECK(e.code() == code);
  }
}

SpecPtr generic_symbol(long n) {
  auto f = FieldDescriptor::function_field(FieldDescriptor::cyclotomic(n == 2 ? 1 : n), {"a", "b"});
  return symbol_algebra(f, n, FieldElement::variable(f, "a"), FieldElement::variable(f, "b"));
}

// (1,1)_n over Q(zeta_n) is Mat_n: u -> diag(1, zeta, ...), v -> inverse cyclic shift.
SpecPtr split_symbol(long n) {
  auto f = FieldDescriptor::cyclotomic(n);
  auto one = FieldElement::from_integer(f, 1);
  return symbol_algebra(f, n, one, one);
}

FMatrix split_image(const AlgebraElement &x) {
  const auto &S = *x.spec();
  const auto n = static_cast<std::size_t>(S.n);
  std::vector<FieldElement> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(S.zeta_powers[i]);
  FMatrix U = FMatrix::diagonal(d), V(S.base, n, n);
  for (std::size_t i = 0; i < n; ++i) V((i + n - 1) % n, i) = FieldElement::from_integer(S.base, 1);
  FMatrix out(S.base, n, n);
  for (long i = 0; i < S.n; ++i)
    for (long j = 0; j < S.n; ++j)
      if (!x.coeff(i, j).is_zero()) out = out + (U.pow(i) * V.pow(j)).scale(x.coeff(i, j));
  return out;
}

AlgebraElement random_element(SpecPtr spec, std::mt19937_64 &rng, int density = 3) {
  std::uniform_int_distribution<long> idx(0, spec->n - 1), val(-3, 3);
  AlgebraElement x(spec);
  for (int t = 0; t < density; ++t) {
    long c = val(rng);
    auto coeff = FieldElement::from_integer(spec->base, c);
    if (spec->kind == AlgebraKind::Symbol && !spec->zeta_powers.empty() && (t % 2))
      coeff = coeff * spec->zeta_powers[static_cast<std::size_t>(idx(rng))];
    x = x + AlgebraElement::monomial(spec, idx(rng), idx(rng), coeff);
  }
  return x;
}

} // namespace

TEST_CASE("symbol algebra relations") {
  for (long n : {2, 3, 5}) {
    CAPTURE(n);
    auto s = generic_symbol(n);
    auto u = AlgebraElement::u(s), v = AlgebraElement::v(s);
    FieldElement zeta = s->zeta_powers[1 % n];
    CHECK(v * u == (u * v).scale(zeta));
    CHECK(u.pow(n) == AlgebraElement::scalar(s, s->a));
    CHECK(v.pow(n) == AlgebraElement::scalar(s, s->b));
  }
  auto q = generic_symbol(2);
  CHECK(q->zeta_powers[1] == FieldElement::from_integer(q->base, -1));
  expect_code([] { symbol_algebra(FieldDescriptor::rationals(), 3, FieldElement::from_integer(FieldDescriptor::rationals(), 2),
                                  FieldElement::from_integer(FieldDescriptor::rationals(), 3)); },
              ErrorCode::RootOfUnityMissing);
  expect_code([&] { algebra_multiply(AlgebraElement::u(generic_symbol(3)), AlgebraElement::u(generic_symbol(5))); },
              ErrorCode::SpecMismatch);
}

TEST_CASE("Weyl algebra relations") {
  for (long p : {2, 3, 5}) {
    auto w = weyl_mod_p(p);
    auto u = AlgebraElement::u(w), v = AlgebraElement::v(w);
    CHECK((v * u - u * v) == AlgebraElement::scalar(w, FieldElement::from_integer(w->base, 1)));
    CHECK(v.pow(p) == AlgebraElement::scalar(w, FieldElement::variable(w->base, "x")));
    CHECK(u.pow(p) == AlgebraElement::scalar(w, FieldElement::variable(w->base, "y")));
  }
  expect_code([] { weyl_mod_p(4); }, ErrorCode::SchemaError);
}

TEST_CASE("associativity") {
  std::mt19937_64 rng(11);
  std::vector<SpecPtr> specs{generic_symbol(2), generic_symbol(3), weyl_mod_p(2), weyl_mod_p(3)};
  for (const auto &s : specs)
    for (int t = 0; t < 15; ++t) {
      auto x = random_element(s, rng), y = random_element(s, rng), z = random_element(s, rng);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("multiplication matches the split matrix model") {
  std::mt19937_64 rng(5);
  for (long n : {2, 3, 4}) {
    auto s = split_symbol(n);
    for (int t = 0; t < 10; ++t) {
      auto x = random_element(s, rng), y = random_element(s, rng);
      CHECK(split_image(x * y) == split_image(x) * split_image(y));
      CHECK(reduced_norm(x) == split_image(x).determinant());
    }
  }
}

TEST_CASE("Weyl multiplication matches the p x p model") {
  std::mt19937_64 rng(9);
  for (long p : {2, 3}) {
    auto w = weyl_mod_p(p);
    auto cert = weyl_split_verification(p);
    auto image = [&](const AlgebraElement &x) {
      FMatrix out(cert.field, static_cast<std::size_t>(p), static_cast<std::size_t>(p));
      for (long i = 0; i < p; ++i)
        for (long j = 0; j < p; ++j) {
          const auto &c = x.coeff(i, j);
          if (c.is_zero()) continue;
          // x -> X^p, y -> Y^p
          std::string text;
          for (char ch : c.to_string()) {
            if (ch == 'x') text += "X^" + std::to_string(p);
            else if (ch == 'y') text += "Y^" + std::to_string(p);
            else text += ch;
          }
          out = out + (cert.u.pow(i) * cert.v.pow(j)).scale(parse_element(cert.field, text));
        }
      return out;
    };
    for (int t = 0; t < 10; ++t) {
      auto x = random_element(w, rng), y = random_element(w, rng);
      CHECK(image(x * y) == image(x) * image(y));
    }
  }
}

TEST_CASE("reduced norm") {
  auto q = generic_symbol(2);
  auto a = q->a;
  CHECK(reduced_norm(AlgebraElement::u(q)) == -a);
  for (long n : {2, 3}) {
    auto s = generic_symbol(n);
    auto c = parse_element(s->base, "a + 2");
    CHECK(reduced_norm(AlgebraElement::scalar(s, c)) == c.pow(n));
  }
  std::mt19937_64 rng(3);
  auto s = generic_symbol(3);
  for (int t = 0; t < 5; ++t) {
    auto x = random_element(s, rng, 2), y = random_element(s, rng, 2);
    CHECK(reduced_norm(x * y) == reduced_norm(x) * reduced_norm(y));
  }
  expect_code([] { reduced_norm(AlgebraElement::u(weyl_mod_p(2))); }, ErrorCode::SpecMismatch);
}

TEST_CASE("norm residue classes") {
  for (long n : {2, 3, 5}) {
    CAPTURE(n);
    auto s = generic_symbol(n);
    auto scalar = norm_residue_class(AlgebraElement::scalar(s, parse_element(s->base, "a*b + 1")));
    REQUIRE(scalar.trivial);
    CHECK(*scalar.trivial);
    auto cu = norm_residue_class(AlgebraElement::u(s));
    REQUIRE(cu.trivial);
    CHECK_FALSE(*cu.trivial);
    CHECK((cu.representative == s->a || cu.representative == -s->a));
    auto same = same_norm_class(AlgebraElement::u(s), AlgebraElement::v(s));
    REQUIRE(same);
    CHECK_FALSE(*same);
  }
  auto s = generic_symbol(2);
  expect_code([&] { norm_residue_class(AlgebraElement(s)); }, ErrorCode::NotInvertible);
}

TEST_CASE("projective orders") {
  for (long n : {2, 3, 5}) {
    auto s = generic_symbol(n);
    auto o = finite_order_in_projective_units(AlgebraElement::u(s));
    CHECK(o.is_torsion);
    CHECK(o.order == n);
    CHECK(finite_order_in_projective_units(AlgebraElement::scalar(s, s->b)).order == 1);
  }
  auto q = generic_symbol(2);
  auto uv = AlgebraElement::u(q) * AlgebraElement::v(q);
  CHECK(finite_order_in_projective_units(uv).order == 2);
  CHECK(uv.pow(2) == AlgebraElement::scalar(q, -(q->a * q->b)));
  auto one_plus_u = AlgebraElement::scalar(q, FieldElement::from_integer(q->base, 1)) + AlgebraElement::u(q);
  CHECK_FALSE(finite_order_in_projective_units(one_plus_u).is_torsion);
  expect_code([&] { finite_order_in_projective_units(AlgebraElement(q)); }, ErrorCode::NotInvertible);
}

TEST_CASE("Heisenberg subgroup of a symbol algebra") {
  for (long n : {2, 3, 5}) {
    CAPTURE(n);
    auto s = generic_symbol(n);
    auto u = AlgebraElement::u(s), v = AlgebraElement::v(s);
    auto group = projective_closure({u, v}, 1000);
    CHECK(group.size() == static_cast<std::size_t>(n * n));
    for (const auto &g : group) {
      auto o = finite_order_in_projective_units(g);
      REQUIRE(o.order);
      CHECK(n % *o.order == 0);
    }
    auto p = pairing::commutator_pairing<AlgebraElement>({v, u}, {n, n}, algebra_lift_ops());
    CHECK(p.gram[0][1] == Rational(1, n));
    CHECK(pairing::validate_pairing(p).valid);
    CHECK(pairing::isotropic_subgroup(p).order == n);
    // Distinct group elements have distinct norm classes.
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        auto same = same_norm_class(group[i], group[j]);
        REQUIRE(same);
        CHECK_FALSE(*same);
      }
  }
}

TEST_CASE("Weyl split certificate") {
  for (long p : {2, 3, 5, 7}) {
    CAPTURE(p);
    auto c = weyl_split_verification(p);
    CHECK(c.all_ok());
    CHECK(c.u_prime_strictly_lower);
    CHECK(c.monomial_rank == static_cast<std::size_t>(p * p));
  }
  expect_code([] { weyl_split_verification(11); }, ErrorCode::PrimeTooLarge);
}

TEST_CASE("inseparable torsion subgroups") {
  auto poly = [](long p, std::vector<long> cs) {
    auto f = FieldDescriptor::prime_field(p);
    std::vector<FieldElement> e;
    for (long c : cs) e.push_back(FieldElement::from_integer(f, c));
    return UPoly(f, e);
  };
  auto r = inseparable_torsion_subgroup(2, {poly(2, {0, 1}), poly(2, {1, 1})});
  CHECK(r.order == 4);
  CHECK(r.elementary_abelian);
  for (long p : {2, 3, 5}) CHECK(inseparable_torsion_subgroup(p, {poly(p, {0, 1})}).order == p);
  // [v^2] = 2[v], so only two of the three classes are independent.
  auto r3 = inseparable_torsion_subgroup(3, {poly(3, {0, 1}), poly(3, {0, 0, 1}), poly(3, {1, 1})});
  CHECK(r3.rank == 2);
  CHECK(r3.order == 9);
  for (long p : {2, 3, 5})
    for (std::size_t m = 1; m <= 4; ++m) {
      auto gens = irreducible_polynomials(p, m);
      auto rep = inseparable_torsion_subgroup(p, gens);
      CHECK(rep.order == pow(Integer(p), m));
      CHECK(rep.commute);
    }
  expect_code([&] { inseparable_torsion_subgroup(2, {UPoly(FieldDescriptor::prime_field(2))}); }, ErrorCode::ZeroPolynomial);
}

TEST_CASE("separability") {
  auto w = weyl_mod_p(3);
  scalars::AlgebraicElement v{w->base, UPoly(w->base, {-FieldElement::variable(w->base, "x"), FieldElement(w->base),
                                                       FieldElement(w->base), FieldElement::from_integer(w->base, 1)})};
  auto r = separability_check(*w, v);
  CHECK_FALSE(r.separable);
  CHECK(r.witness_order == 3);

  auto s = generic_symbol(2);
  auto f = FieldDescriptor::function_field(FieldDescriptor::cyclotomic(4), {"x", "y"});
  auto s4 = symbol_algebra(f, 2, FieldElement::variable(f, "x"), FieldElement::variable(f, "y"));
  scalars::AlgebraicElement e{f, UPoly(f, {-FieldElement::variable(f, "x"), FieldElement(f), FieldElement::from_integer(f, 1)})};
  auto r2 = separability_check(*s4, e);
  CHECK(r2.separable);
  CHECK_FALSE(r2.witness_order);
  expect_code([&] { separability_check(*s4, scalars::AlgebraicElement{f, std::nullopt}); }, ErrorCode::NotAlgebraic);
  expect_code([&] { separability_check(*s, e); }, ErrorCode::DescriptorMismatch);
}
