#include "doctest.h"

#include "aniso/error.hpp"
#include "aniso/pairing.hpp"

#include <random>
#include <set>

using namespace aniso;
using namespace aniso::pairing;
using scalars::FieldDescriptor;
using scalars::FieldElement;
using scalars::FMatrix;

namespace {

template <class F> void expect_code(F fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected error " << error_code_name(code));
  } catch (const Error &e) {
    CHECK(e.code() == code);
  }
}

AlternatingPairing symplectic(long n) {
  return make_pairing(FiniteAbelianGroup::invariant({n, n}),
                      {{Rational(0), Rational(1, n)}, {Rational(n - 1, n), Rational(0)}});
}

AlternatingPairing zero_pairing(std::vector<Integer> factors) {
  const std::size_t k = factors.size();
  return make_pairing(FiniteAbelianGroup::invariant(std::move(factors)),
                      std::vector<std::vector<Rational>>(k, std::vector<Rational>(k, Rational(0))));
}

// Subgroup generated by gens, by closure under addition.
std::set<Element> span(const FiniteAbelianGroup &g, const std::vector<Element> &gens) {
  std::set<Element> seen{g.zero()};
  std::vector<Element> todo{g.zero()};
  while (!todo.empty()) {
    Element x = todo.back();
    todo.pop_back();
    for (const auto &h : gens) {
      Element y = g.add(x, h);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

// Random invariant-factor chain with product <= 256, plus a random alternating gram.
AlternatingPairing random_pairing(std::mt19937_64 &rng) {
  std::vector<Integer> factors;
  long order = 1;
  // rank 1 (where every pairing vanishes) only one time in seven
  int k = std::discrete_distribution<int>({0, 1, 2, 2, 2})(rng);
  for (int i = 0; i < k; ++i) {
    long m = i == 0 ? std::uniform_int_distribution<long>(2, 6)(rng)
                    : factors.back().get_si() * std::uniform_int_distribution<long>(1, 3)(rng);
    if (order * m > 256) break;
    factors.push_back(m);
    order *= m;
  }
  std::vector<std::vector<Rational>> gram(factors.size(), std::vector<Rational>(factors.size(), Rational(0)));
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      long gd = gcd(factors[i], factors[j]).get_si();
      long num = std::uniform_int_distribution<long>(0, gd - 1)(rng);
      gram[i][j] = Rational(num, gd);
      gram[j][i] = Rational(-num, gd);
    }
  return make_pairing(FiniteAbelianGroup::invariant(factors), gram);
}

} // namespace

TEST_CASE("finite abelian group basics") {
  FiniteAbelianGroup g = FiniteAbelianGroup::invariant({2, 6});
  CHECK(g.order() == 12);
  CHECK(g.exponent() == 6);
  CHECK(g.element_order({1, 2}) == 6);
  CHECK(g.element_order({0, 3}) == 2);
  for (Integer i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
  expect_code([] { FiniteAbelianGroup::invariant({4, 6}); }, ErrorCode::SchemaError);
  expect_code([] { FiniteAbelianGroup::invariant({1, 6}); }, ErrorCode::SchemaError);

  auto sb = subgroup_basis(g, {{1, 2}, {1, 5}});
  CHECK(sb.order() == Integer(span(g, {{1, 2}, {1, 5}}).size()));
  CHECK(subgroup_basis(g, {{0, 0}}).order() == 1);
}

TEST_CASE("validate_pairing") {
  CHECK(validate_pairing(zero_pairing({2, 4})).valid);
  CHECK(validate_pairing(symplectic(2)).valid);
  auto bad = make_pairing(FiniteAbelianGroup({2}), {{Rational(1, 2)}});
  auto d = validate_pairing(bad);
  CHECK_FALSE(d.valid);
  CHECK_FALSE(d.reason.empty());
  // Not killed by the factor order.
  CHECK_FALSE(validate_pairing(make_pairing(FiniteAbelianGroup::invariant({2, 2}),
                                            {{Rational(0), Rational(1, 3)}, {Rational(2, 3), Rational(0)}}))
                  .valid);
  // Not antisymmetric.
  CHECK_FALSE(validate_pairing(make_pairing(FiniteAbelianGroup::invariant({3, 3}),
                                            {{Rational(0), Rational(1, 3)}, {Rational(1, 3), Rational(0)}}))
                  .valid);
  expect_code([&] { isotropic_subgroup(bad); }, ErrorCode::InvalidPairing);
}

TEST_CASE("isotropic_subgroup examples") {
  auto z = zero_pairing({2, 6});
  auto lz = isotropic_subgroup(z);
  CHECK(lz.order == 12);

  auto s2 = isotropic_subgroup(symplectic(2));
  CHECK(s2.order == 2);
  CHECK(is_isotropic(symplectic(2), s2.generators));

  auto p4 = symplectic(4);
  auto s4 = isotropic_subgroup(p4);
  CHECK(s4.order == 4);
  REQUIRE(s4.generators.size() == 1);
  CHECK(s4.generators[0] == Element{1, 0});
  CHECK(divides(p4.group.order(), s4.order * s4.order));
}

TEST_CASE("brute force oracle") {
  CHECK(brute_force_isotropic_max(zero_pairing({6})).max_order == 6);
  CHECK(brute_force_isotropic_max(symplectic(2)).max_order == 2);
  auto r3 = brute_force_isotropic_max(symplectic(3));
  CHECK(r3.max_order == 3);
  CHECK(Integer(span(symplectic(3).group, r3.witness).size()) == 3);
  CHECK(is_isotropic(symplectic(3), r3.witness));
  expect_code([] { brute_force_isotropic_max(zero_pairing({64, 128})); }, ErrorCode::GroupTooLarge);
}

TEST_CASE("isotropic_subgroup on random pairings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    auto p = random_pairing(rng);
    CAPTURE(p.to_string());
    REQUIRE(validate_pairing(p).valid);
    auto lam = isotropic_subgroup(p);
    auto elems = span(p.group, lam.generators);
    CHECK(Integer(elems.size()) == lam.order);
    for (const auto &a : elems)
      for (const auto &b : lam.generators) CHECK(p.evaluate(a, b) == 0);
    CHECK(divides(p.group.order(), lam.order * lam.order));
    auto bf = brute_force_isotropic_max(p);
    CHECK(lam.order <= bf.max_order);
    CHECK(divides(p.group.order(), bf.max_order * bf.max_order));
  }
}

TEST_CASE("commutator pairing") {
  auto ops = matrix_lift_ops();
  auto q3 = FieldDescriptor::cyclotomic(3);
  auto zeta = FieldElement::generator(q3);
  auto one = FieldElement::from_integer(q3, 1);

  auto d1 = FMatrix::diagonal({one, zeta, one});
  auto d2 = FMatrix::diagonal({zeta, one, zeta * zeta});
  auto zp = commutator_pairing<FMatrix>({d1, d2}, {3, 3}, ops);
  CHECK(zp.gram[0][1] == 0);
  CHECK(zp.gram[1][0] == 0);

  auto u = FMatrix::diagonal({one, zeta, zeta * zeta});
  auto v = FMatrix::from_integers(q3, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  auto hp = commutator_pairing<FMatrix>({u, v}, {3, 3}, ops);
  CHECK(hp.gram[0][1] == Rational(1, 3));
  CHECK(hp.gram[1][0] == Rational(2, 3));
  CHECK(validate_pairing(hp).valid);
  CHECK(isotropic_subgroup(hp).order == 3);

  auto q = FieldDescriptor::rationals();
  auto swap = FMatrix::from_integers(q, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  auto cyc = FMatrix::from_integers(q, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  expect_code([&] { commutator_pairing<FMatrix>({swap, cyc}, {2, 3}, ops); }, ErrorCode::CommutatorNotScalar);
  expect_code([&] { commutator_pairing<FMatrix>({cyc}, {2}, ops); }, ErrorCode::PreconditionFailed);
}
