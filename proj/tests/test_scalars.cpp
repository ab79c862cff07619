#include "doctest.h"

#include "aniso/error.hpp"
#include "aniso/scalars/algebraic.hpp"
#include "aniso/scalars/field.hpp"
#include "aniso/scalars/matrix.hpp"

#include <random>
#include <set>

using namespace aniso;
using namespace aniso::scalars;

namespace {

FieldDescriptor qxy() { return FieldDescriptor::function_field(FieldDescriptor::rationals(), {"x", "y"}); }

FieldElement random_element(const FieldDescriptor &f, std::mt19937_64 &rng, int terms = 2) {
  std::uniform_int_distribution<int> coef(-4, 4), expo(0, 2);
  auto poly = [&] {
    FieldElement r = FieldElement::from_integer(f, 0);
    for (int t = 0; t < terms; ++t) {
      FieldElement m = FieldElement::from_integer(f, coef(rng));
      if (f.characteristic() == 0 && f.kind() != FieldKind::Rationals && f.base_field()->degree() > 1)
        m *= FieldElement::generator(f).pow(expo(rng));
      if (f.characteristic() != 0 && f.base_field()->degree() > 1)
        m *= FieldElement::generator(f).pow(expo(rng));
      for (const auto &v : f.variables()) m *= FieldElement::variable(f, v).pow(expo(rng));
      r += m;
    }
    return r;
  };
  FieldElement num = poly(), den = poly();
  while (den.is_zero()) den = poly();
  return num / den;
}

std::vector<FieldDescriptor> descriptor_zoo() {
  return {FieldDescriptor::rationals(),
          FieldDescriptor::cyclotomic(5),
          FieldDescriptor::prime_field(7),
          FieldDescriptor::finite_field(2, 3),
          qxy(),
          FieldDescriptor::function_field(FieldDescriptor::cyclotomic(3), {"a", "b"}),
          FieldDescriptor::function_field(FieldDescriptor::prime_field(3), {"x"}),
          FieldDescriptor::function_field(FieldDescriptor::finite_field(2, 2), {"x"})};
}

} // namespace

TEST_CASE("sum of reciprocals in Q(x,y)") {
  auto f = qxy();
  auto x = FieldElement::variable(f, "x"), y = FieldElement::variable(f, "y");
  auto one = FieldElement::from_integer(f, 1);
  auto lhs = one / (x + y) + one / (x - y);
  auto two = FieldElement::from_integer(f, 2);
  CHECK(lhs == two * x / (x * x - y * y));
  CHECK(lhs == parse_element(f, "2*x/(x^2 - y^2)"));
  CHECK(lhs.denominator() == (x * x - y * y).numerator());
}

TEST_CASE("zeta_4 squared is -1") {
  auto f = FieldDescriptor::cyclotomic(4);
  auto z = FieldElement::generator(f);
  CHECK(z * z == FieldElement::from_integer(f, -1));
  CHECK(FieldElement::root_of_unity(f, 4).pow(4).is_one());
}

TEST_CASE("inverse of x+1 in F_2(x)") {
  auto f = FieldDescriptor::function_field(FieldDescriptor::prime_field(2), {"x"});
  auto x = FieldElement::variable(f, "x");
  auto inv = (x + FieldElement::from_integer(f, 1)).inverse();
  CHECK(inv.numerator().is_one());
  CHECK(inv.denominator() == (x + FieldElement::from_integer(f, 1)).numerator());
  CHECK(inv.to_string() == "1/(x + 1)");
  CHECK((x + x).is_zero());
}

TEST_CASE("field errors") {
  auto q = FieldDescriptor::rationals();
  CHECK_THROWS_AS(FieldElement::from_integer(q, 0).inverse(), Error);
  try {
    (void)(FieldElement::from_integer(q, 1) / FieldElement::from_integer(q, 0));
    FAIL("expected DivisionByZero");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  try {
    (void)(FieldElement::from_integer(q, 1) + FieldElement::from_integer(FieldDescriptor::prime_field(3), 1));
    FAIL("expected DescriptorMismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::DescriptorMismatch);
  }
  try {
    (void)FieldElement::root_of_unity(FieldDescriptor::cyclotomic(3), 4);
    FAIL("expected RootOfUnityMissing");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::RootOfUnityMissing);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(0);
  for (const auto &f : descriptor_zoo()) {
    CAPTURE(f.to_string());
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      // normalizing an already canonical element changes nothing
      CHECK(FieldElement::from_polys(f, a.numerator(), a.denominator()) == a);
      CHECK(parse_element(f, "(" + a.to_string() + ")") == a);
    }
  }
}

TEST_CASE("frobenius is additive in characteristic p") {
  std::mt19937_64 rng(1);
  for (const auto &f : descriptor_zoo()) {
    if (f.characteristic() == 0) continue;
    CAPTURE(f.to_string());
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_element(f, rng), b = random_element(f, rng);
      CHECK((a + b).pow(f.characteristic()) == a.pow(f.characteristic()) + b.pow(f.characteristic()));
    }
  }
}

namespace {

// Image of c -> c^2 + c, enumerating elements by index.
std::set<Integer> as_image_oracle(const FieldDescriptor &f) {
  const auto &base = f.base_field();
  std::set<Integer> out;
  for (Integer i = 0; i < base->order(); ++i) {
    BaseElem c = base->element_at(i);
    out.insert(base->index_of(base->add(base->mul(c, c), c)));
  }
  return out;
}

} // namespace

TEST_CASE("artin-schreier image") {
  auto f2 = FieldDescriptor::prime_field(2);
  auto img2 = artin_schreier_image(f2);
  REQUIRE(img2.size() == 1);
  CHECK(img2[0].is_zero());

  auto f4 = FieldDescriptor::finite_field(2, 2);
  auto img4 = artin_schreier_image(f4);
  REQUIRE(img4.size() == 2);
  CHECK(img4[0].is_zero());
  CHECK(img4[1].is_one());

  for (unsigned m = 1; m <= 4; ++m) {
    auto f = m == 1 ? f2 : FieldDescriptor::finite_field(2, m);
    auto img = artin_schreier_image(f);
    CHECK(Integer(img.size()) * 2 == f.base_field()->order());
    std::set<Integer> idx;
    for (const auto &e : img) idx.insert(f.base_field()->index_of(e.constant_value()));
    CHECK(idx == as_image_oracle(f));
  }
  try {
    (void)artin_schreier_image(FieldDescriptor::finite_field(2, 5));
    FAIL("expected FieldTooLarge");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::FieldTooLarge);
  }
  CHECK(artin_schreier_image(FieldDescriptor::finite_field(2, 5), 32).size() == 16);
}

TEST_CASE("minimal polynomials") {
  auto f2x = FieldDescriptor::function_field(FieldDescriptor::prime_field(2), {"x"});
  auto x = FieldElement::variable(f2x, "x");
  auto rel = UPoly::monomial(FieldElement::from_integer(f2x, 1), 2) - UPoly::monomial(x, 0);
  auto mp = minimal_polynomial({f2x, rel});
  CHECK(mp.polynomial == rel);
  CHECK_FALSE(mp.separable);
  CHECK(mp.irreducible_certified);
  CHECK(mp.polynomial.derivative().is_zero());

  auto qx = FieldDescriptor::function_field(FieldDescriptor::rationals(), {"x"});
  auto xq = FieldElement::variable(qx, "x");
  auto relq = UPoly::monomial(FieldElement::from_integer(qx, 1), 2) - UPoly::monomial(xq, 0);
  auto mq = minimal_polynomial({qx, relq});
  CHECK(mq.separable);
  CHECK(mq.irreducible_certified);
  CHECK(mq.polynomial.to_string() == "t^2 - x");

  auto q = FieldDescriptor::rationals();
  auto c = FieldElement::from_rational(q, Rational(3, 7));
  auto ml = minimal_polynomial({q, UPoly::linear(c).scale(FieldElement::from_integer(q, 5))});
  CHECK(ml.polynomial == UPoly::linear(c));
  CHECK(ml.separable);

  auto expect_code = [](auto fn, ErrorCode code) {
    try {
      fn();
      FAIL("expected error");
    } catch (const Error &e) {
      CHECK(e.code() == code);
    }
  };
  expect_code([&] { (void)minimal_polynomial({q, std::nullopt}); }, ErrorCode::NotAlgebraic);
  expect_code([&] { (void)minimal_polynomial({q, UPoly(q)}); }, ErrorCode::NotAlgebraic);
  expect_code([&] { (void)minimal_polynomial({q, UPoly::monomial(c, 0)}); }, ErrorCode::NotAlgebraic);
}

TEST_CASE("field matrices") {
  auto q = FieldDescriptor::rationals();
  auto m = FMatrix::from_integers(q, {{2, 1}, {1, 1}});
  CHECK(m.determinant().is_one());
  CHECK((m * m.inverse()).is_identity());
  CHECK(FMatrix::from_integers(q, {{1, 2}, {2, 4}}).rank() == 1);
  auto ns = FMatrix::from_integers(q, {{1, 2}, {2, 4}}).nullspace();
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == FieldElement::from_integer(q, -2));
  auto rot = FMatrix::from_integers(q, {{0, -1}, {1, 0}});
  CHECK(matrix_group_closure({rot}, 100).size() == 4);
  CHECK(matrix_group_closure({rot}, 100, true).size() == 2);
  CHECK_THROWS_AS(matrix_group_closure({FMatrix::from_integers(q, {{1, 1}, {0, 1}})}, 50), Error);
}
