#include "aniso/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace aniso::bounds {

MinkowskiValues minkowski_values(long n) {
  if (n < 1) fail(ErrorCode::SchemaError, "rank must be at least 1");
  Integer m = 1;
  for (long p = 2; p <= n + 1; ++p) {
    if (!is_prime(p)) continue;
    long e = 0;
    for (Integer pk = p - 1; pk <= n; pk *= p) e += Integer(n / pk).get_si();
    m *= pow(Integer(p), static_cast<unsigned long>(e));
  }
  static const std::map<long, long> table_a = {{1, 2}, {2, 12}, {3, 48}};
  std::optional<Integer> a;
  if (auto it = table_a.find(n); it != table_a.end()) a = it->second;
  return {a, m};
}

std::pair<char, long> parse_dynkin(const std::string &text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0])))
    fail(ErrorCode::UnknownType, "cannot parse Dynkin type '" + text + "'");
  std::string digits = text.substr(1);
  if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
  if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorCode::UnknownType, "cannot parse Dynkin type '" + text + "'");
  return {static_cast<char>(std::toupper(static_cast<unsigned char>(text[0]))), std::stol(digits)};
}

std::set<long> torsion_primes(const std::vector<std::pair<char, long>> &types) {
  std::set<long> out;
  for (const auto &[letter, rank] : types) {
    auto bad = [&] { fail(ErrorCode::UnknownType, std::string("unknown Dynkin type ") + letter + std::to_string(rank)); };
    switch (letter) {
    case 'A':
      if (rank < 1) bad();
      break;
    case 'C':
      if (rank < 2) bad();
      break;
    case 'B':
      if (rank < 2) bad();
      out.insert(2);
      break;
    case 'D':
      if (rank < 4) bad();
      out.insert(2);
      break;
    case 'G':
      if (rank != 2) bad();
      out.insert(2);
      break;
    case 'F':
      if (rank != 4) bad();
      out.insert({2, 3});
      break;
    case 'E':
      if (rank < 6 || rank > 8) bad();
      out.insert({2, 3});
      if (rank == 8) out.insert(5);
      break;
    default:
      bad();
    }
  }
  return out;
}

FiniteMatrixGroup FiniteMatrixGroup::generated_by(const std::vector<FMatrix> &generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorCode::SchemaError, "at least one generator is required");
  try {
    return {generators.front().field(), scalars::matrix_group_closure(generators, cap)};
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ClosureCapExceeded) fail(ErrorCode::GroupTooLarge, e.what());
    throw;
  }
}

BurnsideReport burnside_divisibility_check(const FiniteMatrixGroup &g, const Integer &d) {
  if (g.elements.empty()) fail(ErrorCode::SchemaError, "group has no elements");
  if (g.size() > 100000) fail(ErrorCode::GroupTooLarge, "group order exceeds 10^5");
  if (d < 1) fail(ErrorCode::SchemaError, "d must be positive");
  const Integer order = g.size();
  const Integer &p = g.field.characteristic();
  const std::size_t n = g.dimension();
  BurnsideReport r{order, coprime_part(order, p), n, d, true, 0, {}, pow(d, n), false};
  std::set<Integer> orders;
  for (const auto &x : g.elements) {
    FMatrix power = x;
    long k = 1;
    while (!power.is_identity()) {
      if (Integer(k) > order) fail(ErrorCode::SchemaError, "element of infinite order in a supposedly finite group");
      power = power * x;
      ++k;
    }
    orders.insert(k);
    if ((p == 0 || !divides(p, Integer(k))) && !divides(Integer(k), d)) {
      r.hypothesis_holds = false;
      ++r.violations;
    }
  }
  r.element_orders.assign(orders.begin(), orders.end());
  r.conclusion_holds = divides(r.order_prime, r.bound);
  if (r.hypothesis_holds && !r.conclusion_holds)
    fail(ErrorCode::InternalConsistency, "|G|' = " + r.order_prime.get_str() + " does not divide " + r.bound.get_str());
  return r;
}

namespace {

const std::vector<std::pair<BoundKind, std::string>> kind_names = {
    {BoundKind::Torus, "torus"},
    {BoundKind::ReductivePerfect, "reductive_perfect"},
    {BoundKind::GeneralLag, "general_lag"},
    {BoundKind::SemisimpleCharP, "semisimple_char_p"},
    {BoundKind::SeveriBrauer, "severi_brauer"},
    {BoundKind::QuadricOdd, "quadric_odd"},
    {BoundKind::QuadricEven, "quadric_even"},
};

long need(const std::optional<long> &v, const char *name) {
  if (!v) fail(ErrorCode::MissingParameter, std::string("parameter ") + name + " is required");
  if (*v < 1) fail(ErrorCode::PreconditionFailed, std::string("parameter ") + name + " must be positive");
  return *v;
}

} // namespace

std::optional<BoundKind> parse_bound_kind(const std::string &name) {
  for (const auto &[k, s] : kind_names)
    if (s == name) return k;
  return std::nullopt;
}

std::string bound_kind_name(BoundKind kind) {
  for (const auto &[k, s] : kind_names)
    if (k == kind) return s;
  return "unknown";
}

BoundResult bound_calculator(const BoundQuery &q) {
  switch (q.kind) {
  case BoundKind::Torus: {
    long n = need(q.n, "n");
    Integer m = minkowski_values(n).upsilon_m;
    return {pow(m, static_cast<unsigned long>(n)), m,
            "|G| divides Upsilon_M(" + std::to_string(n) + ")^" + std::to_string(n) + " = " + m.get_str() + "^" + std::to_string(n)};
  }
  case BoundKind::ReductivePerfect:
  case BoundKind::GeneralLag:
  case BoundKind::SemisimpleCharP: {
    long r = need(q.r, "r"), n = need(q.n, "n"), N = need(q.N, "N");
    Integer m = minkowski_values(n).upsilon_m;
    Integer bound = r * pow(m, static_cast<unsigned long>(N));
    std::string rhs = std::to_string(r) + " * Upsilon_M(" + std::to_string(n) + ")^" + std::to_string(N) + " = " + bound.get_str();
    if (q.kind == BoundKind::ReductivePerfect) return {bound, m, "|G| divides " + rhs};
    if (q.kind == BoundKind::GeneralLag) return {bound, std::nullopt, "|G|' (part prime to the characteristic) divides " + rhs};
    long p = need(q.p, "p");
    if (!is_prime(p)) fail(ErrorCode::PreconditionFailed, "p must be prime");
    std::string meaning = "G = G1 x| G2 with p not dividing |G1|, |G1| divides " + rhs;
    std::optional<Integer> exp;
    if (q.pi1_order) {
      auto [l, pm] = pi1_order_split(*q.pi1_order, p);
      exp = pow(Integer(p), pm);
      meaning += "; G2 abelian p-group of exponent at most " + exp->get_str() + " (|pi_1| = " + l.get_str() + " * " +
                 std::to_string(p) + "^" + std::to_string(pm) + ")";
    }
    return {bound, exp, meaning};
  }
  case BoundKind::SeveriBrauer: {
    long n = need(q.n, "n");
    return {Integer(n) * n, Integer(n), "G abelian, g^" + std::to_string(n) + " = 1, |G| divides " + std::to_string(n) + "^2"};
  }
  case BoundKind::QuadricOdd: {
    long n = need(q.n, "n");
    if (n < 3 || n % 2 == 0) fail(ErrorCode::PreconditionFailed, "quadric_odd needs odd n >= 3");
    return {pow(Integer(2), static_cast<unsigned long>(n - 1)), Integer(2),
            "G = (Z/2)^m with m <= " + std::to_string(n - 1)};
  }
  case BoundKind::QuadricEven: {
    long n = need(q.n, "n");
    if (n < 4 || n % 2 != 0) fail(ErrorCode::PreconditionFailed, "quadric_even needs even n >= 4");
    return {pow(Integer(8), static_cast<unsigned long>(n - 1)), Integer(4),
            "elements have order 1, 2 or 4 and |G| divides 8^" + std::to_string(n - 1)};
  }
  }
  fail(ErrorCode::SchemaError, "unknown bound kind");
}

std::pair<Integer, unsigned> pi1_order_split(const Integer &order, const Integer &p) {
  if (order < 1) fail(ErrorCode::SchemaError, "order must be positive");
  if (p < 2 || !is_prime(p)) fail(ErrorCode::SchemaError, "p must be prime");
  Integer l = order;
  unsigned m = 0;
  while (divides(p, l)) {
    l /= p;
    ++m;
  }
  return {l, m};
}

} // namespace aniso::bounds
