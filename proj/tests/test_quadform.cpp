#include "doctest.h"

#include "aniso/error.hpp"
#include "aniso/quadform.hpp"

#include <random>
#include <set>

using namespace aniso;
using namespace aniso::quadform;
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

FieldElement num(const FieldDescriptor &f, long n) { return FieldElement::from_integer(f, n); }

QuadraticForm form(const FieldDescriptor &f, const std::vector<std::vector<long>> &upper) {
  return QuadraticForm(FMatrix::from_integers(f, upper));
}

QuadraticForm random_form(const FieldDescriptor &f, std::size_t n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  FMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = num(f, d(rng));
  return QuadraticForm(m);
}

Vector random_vector(const FieldDescriptor &f, std::size_t n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(num(f, d(rng)));
  return v;
}

FMatrix permutation(const FieldDescriptor &f, const std::vector<std::size_t> &perm) {
  FMatrix g(f, perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) g(perm[i], i) = num(f, 1);
  return g;
}

// Every quadratic form over a finite field in dimension n.
std::vector<QuadraticForm> all_forms(const FieldDescriptor &f, std::size_t n) {
  auto elems = f.base_field()->elements(1 << 16);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) slots.push_back({i, j});
  std::vector<QuadraticForm> out;
  std::vector<std::size_t> digit(slots.size(), 0);
  while (true) {
    FMatrix m(f, n, n);
    for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].first, slots[s].second) = FieldElement::from_base(f, elems[digit[s]]);
    out.emplace_back(m);
    std::size_t s = 0;
    while (s < digit.size() && digit[s] == elems.size() - 1) digit[s++] = 0;
    if (s == digit.size()) break;
    ++digit[s];
  }
  return out;
}

// Generators of GL_n(F): transvections I + t E_ij and diag(c, 1, ..., 1).
std::vector<FMatrix> gl_generators(const FieldDescriptor &f, std::size_t n) {
  std::vector<FMatrix> gens;
  for (const auto &t : f.base_field()->elements(1 << 16)) {
    FieldElement c = FieldElement::from_base(f, t);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          FMatrix g = FMatrix::identity(f, n);
          g(i, j) = c;
          gens.push_back(g);
        }
    FMatrix d = FMatrix::identity(f, n);
    d(0, 0) = c;
    gens.push_back(d);
  }
  return gens;
}

// Orbits of nondegenerate forms under GL_n(F), as connected components of the generator action.
std::vector<std::vector<QuadraticForm>> orbits(const FieldDescriptor &f, std::size_t n) {
  std::vector<QuadraticForm> forms;
  for (auto &q : all_forms(f, n))
    if (is_nondegenerate(q)) forms.push_back(q);
  auto gens = gl_generators(f, n);
  std::vector<bool> seen(forms.size(), false);
  auto find = [&](const QuadraticForm &q) {
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (forms[i] == q) return i;
    return forms.size();
  };
  std::vector<std::vector<QuadraticForm>> out;
  for (std::size_t s = 0; s < forms.size(); ++s) {
    if (seen[s]) continue;
    std::vector<QuadraticForm> orbit{forms[s]};
    seen[s] = true;
    for (std::size_t h = 0; h < orbit.size(); ++h)
      for (const auto &g : gens) {
        auto idx = find(orbit[h].compose(g));
        REQUIRE(idx < forms.size());
        if (!seen[idx]) {
          seen[idx] = true;
          orbit.push_back(forms[idx]);
        }
      }
    out.push_back(orbit);
  }
  return out;
}

} // namespace

TEST_CASE("associated bilinear form") {
  auto q = FieldDescriptor::rationals();
  CHECK(associated_bilinear(form(q, {{1}})) == FMatrix::from_integers(q, {{2}}));
  auto f2 = FieldDescriptor::prime_field(2);
  CHECK(associated_bilinear(form(f2, {{0, 1}, {0, 0}})) == FMatrix::from_integers(f2, {{0, 1}, {1, 0}}));
  CHECK(associated_bilinear(QuadraticForm::diagonal({num(q, 3), num(q, -5)})) == FMatrix::from_integers(q, {{6, 0}, {0, -10}}));

  std::mt19937_64 rng(1);
  for (const auto &f : {q, FieldDescriptor::prime_field(2), FieldDescriptor::finite_field(2, 2), FieldDescriptor::prime_field(5)})
    for (int t = 0; t < 10; ++t) {
      auto qf = random_form(f, 4, rng);
      auto b = associated_bilinear(qf);
      CHECK(b == b.transpose());
      auto v = random_vector(f, 4, rng), w = random_vector(f, 4, rng);
      Vector vw;
      for (std::size_t i = 0; i < 4; ++i) vw.push_back(v[i] + w[i]);
      FieldElement bvw(f);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) bvw += v[i] * b(i, j) * w[j];
      CHECK(bvw == qf.evaluate(vw) - qf.evaluate(v) - qf.evaluate(w));
      if (f.characteristic() == 2)
        for (std::size_t i = 0; i < 4; ++i) CHECK(b(i, i).is_zero());
    }
}

TEST_CASE("diagonalize") {
  auto q = FieldDescriptor::rationals();
  auto d = diagonalize(form(q, {{0, 1}, {0, 0}}));
  REQUIRE(d.coefficients.size() == 2);
  CHECK(is_square(d.coefficients[0]));
  CHECK(is_square(-d.coefficients[1]));
  auto diag = QuadraticForm::diagonal({num(q, 2), num(q, 3), num(q, -1)});
  auto dd = diagonalize(diag);
  CHECK(dd.change.is_identity());
  auto p2 = pfister_build(2);
  auto pd = diagonalize(p2.form);
  CHECK(pd.change.is_identity());
  CHECK(pd.coefficients[3] == parse_element(p2.field, "a1*a2"));

  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 8; ++n)
    for (int t = 0; t < 4; ++t) {
      auto qf = random_form(q, n, rng);
      if (!is_nondegenerate(qf)) continue;
      auto r = diagonalize(qf);
      FMatrix g = r.change.transpose() * associated_bilinear(qf) * r.change;
      CHECK(g.is_diagonal());
      CHECK_FALSE(r.change.determinant().is_zero());
    }
  expect_code([&] { diagonalize(form(q, {{1, 0}, {0, 0}})); }, ErrorCode::DegenerateForm);
  expect_code([] { diagonalize(form(FieldDescriptor::prime_field(2), {{0, 1}, {0, 0}})); }, ErrorCode::CharTwo);
}

TEST_CASE("Arf normal form examples") {
  auto f2 = FieldDescriptor::prime_field(2);
  auto h = arf_normal_form(form(f2, {{0, 1}, {0, 0}}));
  CHECK(h.a.is_zero());
  CHECK(h.isotropic_vector.has_value());
  auto an = arf_normal_form(form(f2, {{1, 1}, {0, 1}}));
  CHECK(an.a.is_one());
  CHECK_FALSE(an.isotropic_vector);
  CHECK_FALSE(find_isotropic_exhaustive(form(f2, {{1, 1}, {0, 1}})));

  CHECK(arf_invariant_class(num(f2, 1), num(f2, 1)));
  CHECK_FALSE(arf_invariant_class(num(f2, 0), num(f2, 1)));
  auto f4 = FieldDescriptor::finite_field(2, 2);
  CHECK(arf_invariant_class(num(f4, 0), num(f4, 1)));

  expect_code([] { arf_normal_form(form(FieldDescriptor::prime_field(3), {{0, 1}, {0, 0}})); }, ErrorCode::WrongCharacteristic);
  expect_code([&] { arf_normal_form(form(f2, {{1, 0}, {0, 1}})); }, ErrorCode::DegenerateForm);
  expect_code([&] { arf_normal_form(form(f2, {{1, 1, 0}, {0, 0, 1}, {0, 0, 0}})); }, ErrorCode::DegenerateForm);
  expect_code([] { arf_invariant_class(num(FieldDescriptor::rationals(), 0), num(FieldDescriptor::rationals(), 1)); },
              ErrorCode::WrongCharacteristic);
}

TEST_CASE("dimension 2 orbits are separated by the Arf class") {
  for (const auto &f : {FieldDescriptor::prime_field(2), FieldDescriptor::finite_field(2, 2)}) {
    CAPTURE(f.to_string());
    auto orb = orbits(f, 2);
    CHECK(orb.size() == 2);
    std::vector<FieldElement> reps;
    for (const auto &o : orb) {
      FieldElement a = arf_normal_form(o.front()).a;
      for (const auto &q : o) CHECK(arf_invariant_class(arf_normal_form(q).a, a));
      reps.push_back(a);
    }
    CHECK_FALSE(arf_invariant_class(reps[0], reps[1]));
  }
}

TEST_CASE("dimension 4 over F_2") {
  auto f2 = FieldDescriptor::prime_field(2);
  std::size_t count = 0;
  for (const auto &q : all_forms(f2, 4)) {
    if (!is_nondegenerate(q)) continue;
    ++count;
    auto nf = arf_normal_form(q);
    REQUIRE(nf.isotropic_vector);
    CHECK(q.evaluate(*nf.isotropic_vector).is_zero());
    CHECK(find_isotropic_exhaustive(q).has_value());
  }
  CHECK(count > 0);
  auto orb = orbits(f2, 4);
  CHECK(orb.size() == 2);
}

TEST_CASE("isotropic vectors from order-p isometries") {
  auto f3 = FieldDescriptor::prime_field(3);
  auto q3 = QuadraticForm::diagonal({num(f3, 1), num(f3, 1), num(f3, 1)});
  auto w3 = extract_isotropic_from_order_p(permutation(f3, {1, 2, 0}), q3);
  CHECK(w3.v1 == Vector{num(f3, 1), num(f3, 1), num(f3, 1)});
  CHECK(q3.evaluate(w3.v1).is_zero());

  auto f5 = FieldDescriptor::prime_field(5);
  auto q5 = QuadraticForm::diagonal(Vector(5, num(f5, 1)));
  auto g5 = permutation(f5, {1, 2, 3, 4, 0});
  auto w5 = extract_isotropic_from_order_p(g5, q5);
  CHECK(w5.v1 == Vector(5, num(f5, 1)));
  CHECK(g5.apply(w5.v2) == Vector{w5.v1[0] + w5.v2[0], w5.v1[1] + w5.v2[1], w5.v1[2] + w5.v2[2], w5.v1[3] + w5.v2[3],
                                  w5.v1[4] + w5.v2[4]});

  expect_code([&] { extract_isotropic_from_order_p(permutation(f3, {1, 0, 2}), q3); }, ErrorCode::NotOrderP);
  auto skew = QuadraticForm::diagonal({num(f3, 1), num(f3, 2), num(f3, 1)});
  expect_code([&] { extract_isotropic_from_order_p(permutation(f3, {1, 2, 0}), skew); }, ErrorCode::NotIsometry);
}

TEST_CASE("involution checks") {
  auto p = pfister_build(3);
  auto sig = involution_check(*p.sigma, p.form);
  CHECK(sig.orthogonal);
  CHECK(sig.square_is_identity);
  CHECK(sig.projective_order == 2);
  FMatrix iota = *p.sigma * p.tau * *p.sigma * p.tau;
  auto io = involution_check(iota, p.form);
  CHECK(io.projective_order == 2);
  CHECK_FALSE(iota.scalar_value());
  auto q = FieldDescriptor::rationals();
  auto d = involution_check(FMatrix::diagonal({num(q, 1), num(q, -1), num(q, 1)}),
                            QuadraticForm::diagonal({num(q, 1), num(q, 1), num(q, 1)}));
  CHECK(d.projective_order == 2);
  CHECK(d.eigenvalues.size() == 2);
  expect_code([&] { involution_check(p.tau, p.form); }, ErrorCode::NotDiagonalizable);
  auto cyc = FMatrix::from_integers(q, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  expect_code([&] { involution_check(cyc, QuadraticForm::diagonal({num(q, 1), num(q, 1), num(q, 1)})); },
              ErrorCode::OrderExceedsBound);
  auto f2 = FieldDescriptor::prime_field(2);
  expect_code([&] { involution_check(FMatrix::identity(f2, 2), form(f2, {{0, 1}, {0, 0}})); }, ErrorCode::CharTwo);
}

TEST_CASE("Pfister forms") {
  auto p1 = pfister_build(1);
  CHECK(p1.form.to_string() == "x1^2 + a1*x2^2");
  CHECK_FALSE(p1.sigma);
  for (unsigned k = 1; k <= 4; ++k) {
    auto p = pfister_build(k);
    CHECK(p.form.compose(p.tau) == p.form.scale(p.lambda_tau));
    if (p.sigma) CHECK(p.form.compose(*p.sigma) == p.form);
    CHECK((p.tau * p.tau).scalar_value() == p.lambda_tau);
  }
  CHECK(subset_name(0) == "{}");
  CHECK(subset_name(5) == "{1,3}");
  expect_code([] { pfister_build(6); }, ErrorCode::KTooLarge);
  expect_code([] { pfister_build(0); }, ErrorCode::KTooLarge);
  expect_code([] { pfister_group_closure(1); }, ErrorCode::KTooLarge);
}

TEST_CASE("Pfister refutation") {
  auto p1 = pfister_build(1);
  auto t1 = pfister_refute_point(1, {num(p1.field, 1), num(p1.field, 0)});
  CHECK(t1.value.is_one());
  auto p2 = pfister_build(2);
  auto a2 = FieldElement::variable(p2.field, "a2");
  auto t2 = pfister_refute_point(2, {a2, num(p2.field, 0), num(p2.field, 1), num(p2.field, 0)});
  CHECK(t2.value == a2 * a2 + a2);
  CHECK(t2.steps.size() == 2);
  expect_code([&] { pfister_refute_point(2, Vector(4, num(p2.field, 0))); }, ErrorCode::AllZeroCandidate);
  expect_code([&] { pfister_refute_point(2, Vector(3, num(p2.field, 1))); }, ErrorCode::SchemaError);

  std::mt19937_64 rng(0);
  for (int t = 0; t < 25; ++t) {
    auto c = random_pfister_candidate(3, 3, rng);
    auto trace = pfister_refute_point(3, c);
    CHECK_FALSE(trace.value.is_zero());
    CHECK(trace.steps.size() == 3);
    for (const auto &s : trace.steps) CHECK_FALSE(s.leading_value.is_zero());
  }
}

TEST_CASE("Pfister group") {
  // For k = 2 the commutator is trivial: {1}, {2} are each other's complements.
  auto g2 = pfister_group_closure(2);
  CHECK(g2.elements.size() == 4);
  CHECK_FALSE(g2.non_abelian);
  for (unsigned k : {3u, 4u}) {
    auto g = pfister_group_closure(k);
    CHECK(g.elements.size() == 8);
    CHECK(g.non_abelian);
    CHECK(g.iota_nontrivial);
    CHECK(g.iota_involution);
    CHECK(g.order_divides_bound);
    CHECK(g.orders_in_1_2_4);
    std::set<long> orders(g.orders.begin(), g.orders.end());
    CHECK(orders == std::set<long>{1, 2, 4});
  }
  auto g3 = pfister_group_closure(3);
  // iota negates x_{1}, x_{2} and their complements.
  for (unsigned m = 0; m < 8; ++m) {
    bool negated = m == 1 || m == 2 || m == (7 ^ 1u) || m == (7 ^ 2u);
    CHECK(g3.iota(m, m) == (negated ? -g3.iota(0, 0) : g3.iota(0, 0)));
  }
}
