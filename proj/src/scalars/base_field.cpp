#include "aniso/scalars/base_field.hpp"

#include "aniso/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace aniso::scalars {

namespace {

// Dense univariate polynomials over the prime field, low to high, no trailing zeros.
using PrimePoly = std::vector<Rational>;

Rational prime_reduce(const Rational &q, const Integer &p) {
  if (p == 0) return q;
  Integer den = mod(q.get_den(), p);
  if (den == 0) fail(ErrorCode::DivisionByZero, "denominator divisible by the characteristic");
  return Rational(mod(q.get_num() * inverse_mod(den, p), p));
}

void trim(PrimePoly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PrimePoly poly_sub(const PrimePoly &a, const PrimePoly &b, const Integer &p) {
  PrimePoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  for (auto &c : r) c = prime_reduce(c, p);
  trim(r);
  return r;
}

PrimePoly poly_mul(const PrimePoly &a, const PrimePoly &b, const Integer &p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto &c : r) c = prime_reduce(c, p);
  trim(r);
  return r;
}

// Returns (quotient, remainder); b nonzero.
std::pair<PrimePoly, PrimePoly> poly_divmod(PrimePoly a, const PrimePoly &b, const Integer &p) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Rational lead_inv = prime_reduce(Rational(1) / b.back(), p);
  PrimePoly q(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational c = prime_reduce(a.back() * lead_inv, p);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = prime_reduce(a[shift + j] - c * b[j], p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, const Integer &p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational inv = prime_reduce(Rational(1) / a.back(), p);
    for (auto &c : a) c = prime_reduce(c * inv, p);
  }
  return a;
}

PrimePoly poly_powmod(PrimePoly base, Integer e, const PrimePoly &m, const Integer &p) {
  PrimePoly result{Rational(1)};
  base = poly_divmod(base, m, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_divmod(poly_mul(result, base, p), m, p).second;
    e >>= 1;
    if (e > 0) base = poly_divmod(poly_mul(base, base, p), m, p).second;
  }
  return result;
}

PrimePoly to_prime_poly(const std::vector<Integer> &c) {
  PrimePoly r;
  for (const auto &z : c) r.emplace_back(z);
  trim(r);
  return r;
}

std::vector<Integer> int_poly_exact_div(std::vector<Integer> a, const std::vector<Integer> &b) {
  // b monic
  std::vector<Integer> q(a.size() - b.size() + 1, Integer(0));
  for (std::size_t shift = q.size(); shift-- > 0;) {
    Integer c = a[shift + b.size() - 1];
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  return q;
}

struct ConwayEntry {
  unsigned p;
  unsigned m;
  std::vector<int> coeffs; // low to high, monic
};

// Conway polynomials for small fields (low-order coefficient first).
const std::vector<ConwayEntry> &conway_table() {
  static const std::vector<ConwayEntry> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 0, 0, 2, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {5, 2, {2, 4, 1}},
      {5, 3, {3, 3, 0, 1}},
      {5, 4, {2, 4, 4, 0, 1}},
      {7, 2, {3, 6, 1}},
      {7, 3, {4, 0, 6, 1}},
  };
  return table;
}

} // namespace

std::vector<Integer> cyclotomic_polynomial(const Integer &n) {
  if (n < 1) fail(ErrorCode::PreconditionFailed, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<Integer, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  unsigned long nn = n.get_ui();
  std::vector<Integer> result(nn + 1, Integer(0));
  result[0] = -1;
  result[nn] = 1;
  for (unsigned long d = 1; d < nn; ++d)
    if (nn % d == 0) result = int_poly_exact_div(result, cyclotomic_polynomial(Integer(d)));
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(n, result);
  return result;
}

bool is_irreducible_mod_p(const std::vector<Integer> &poly, const Integer &p) {
  PrimePoly f = to_prime_poly(poly);
  for (auto &c : f) c = prime_reduce(c, p);
  trim(f);
  if (f.size() < 2) return false;
  std::size_t m = f.size() - 1;
  if (m == 1) return true;
  PrimePoly t{Rational(0), Rational(1)};
  auto frobenius_iterate = [&](std::size_t k) {
    PrimePoly x = t;
    for (std::size_t i = 0; i < k; ++i) x = poly_powmod(x, p, f, p);
    return x;
  };
  if (!poly_sub(frobenius_iterate(m), t, p).empty()) return false;
  for (const auto &[r, e] : factorize(Integer(static_cast<unsigned long>(m)))) {
    (void)e;
    std::size_t k = m / r.get_ui();
    PrimePoly g = poly_gcd(poly_sub(frobenius_iterate(k), t, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<Integer> finite_field_modulus(const Integer &p, unsigned m) {
  if (m == 1) return {Integer(0), Integer(1)};
  for (const auto &entry : conway_table()) {
    if (p == entry.p && m == entry.m) {
      std::vector<Integer> out;
      for (int c : entry.coeffs) out.emplace_back(c);
      return out;
    }
  }
  // Fallback: least monic irreducible, ordering by sum c_i p^i over the low coefficients.
  Integer count = aniso::pow(p, m);
  for (Integer idx = 0; idx < count; ++idx) {
    std::vector<Integer> cand(m + 1, Integer(0));
    Integer rest = idx;
    for (unsigned i = 0; i < m; ++i) {
      cand[i] = mod(rest, p);
      rest /= p;
    }
    cand[m] = 1;
    if (cand[0] != 0 && is_irreducible_mod_p(cand, p)) return cand;
  }
  fail(ErrorCode::InternalConsistency, "no irreducible polynomial found");
}

std::shared_ptr<const BaseField> BaseField::rationals() {
  static const std::shared_ptr<const BaseField> q = [] {
    auto f = std::shared_ptr<BaseField>(new BaseField());
    f->characteristic_ = 0;
    f->modulus_ = {Rational(-1), Rational(1)};
    f->cyclotomic_order_ = 1;
    return std::shared_ptr<const BaseField>(f);
  }();
  return q;
}

std::shared_ptr<const BaseField> BaseField::cyclotomic(const Integer &n) {
  if (n < 1) fail(ErrorCode::PreconditionFailed, "cyclotomic order N must be >= 1");
  auto f = std::shared_ptr<BaseField>(new BaseField());
  f->characteristic_ = 0;
  for (const auto &c : cyclotomic_polynomial(n)) f->modulus_.emplace_back(c);
  f->cyclotomic_order_ = n;
  return f;
}

std::shared_ptr<const BaseField> BaseField::finite(const Integer &p, unsigned m) {
  if (!is_prime(p)) fail(ErrorCode::PreconditionFailed, "characteristic " + p.get_str() + " is not prime");
  if (m < 1) fail(ErrorCode::PreconditionFailed, "extension degree must be >= 1");
  auto f = std::shared_ptr<BaseField>(new BaseField());
  f->characteristic_ = p;
  for (const auto &c : finite_field_modulus(p, m)) f->modulus_.emplace_back(c);
  f->ext_degree_ = m;
  return f;
}

Integer BaseField::order() const {
  if (characteristic_ == 0) return 0;
  return aniso::pow(characteristic_, static_cast<unsigned long>(degree()));
}

BaseElem BaseField::one() const {
  BaseElem r = zero();
  r[0] = 1;
  return r;
}

BaseElem BaseField::from_rational(const Rational &q) const {
  BaseElem r = zero();
  r[0] = reduce(q);
  return r;
}

BaseElem BaseField::generator() const {
  if (degree() == 1) return from_rational(-modulus_[0]);
  BaseElem r = zero();
  r[1] = 1;
  return r;
}

Rational BaseField::reduce(const Rational &q) const { return prime_reduce(q, characteristic_); }

bool BaseField::is_zero(const BaseElem &a) const {
  return std::all_of(a.begin(), a.end(), [](const Rational &c) { return c == 0; });
}

bool BaseField::is_one(const BaseElem &a) const {
  if (a.empty() || a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](const Rational &c) { return c == 0; });
}

bool BaseField::is_prime_field_element(const BaseElem &a) const {
  return std::all_of(a.begin() + 1, a.end(), [](const Rational &c) { return c == 0; });
}

BaseElem BaseField::add(const BaseElem &a, const BaseElem &b) const {
  BaseElem r(degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce(a[i] + b[i]);
  return r;
}

BaseElem BaseField::sub(const BaseElem &a, const BaseElem &b) const {
  BaseElem r(degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce(a[i] - b[i]);
  return r;
}

BaseElem BaseField::neg(const BaseElem &a) const {
  BaseElem r(degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce(-a[i]);
  return r;
}

BaseElem BaseField::scale(const BaseElem &a, const Rational &q) const {
  Rational s = reduce(q);
  BaseElem r(degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce(a[i] * s);
  return r;
}

BaseElem BaseField::mul(const BaseElem &a, const BaseElem &b) const {
  const std::size_t d = degree();
  if (d == 1) return {reduce(a[0] * b[0])};
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  for (std::size_t k = prod.size(); k-- > d;) {
    if (prod[k] == 0) continue;
    Rational c = prod[k];
    prod[k] = 0;
    for (std::size_t j = 0; j < d; ++j) prod[k - d + j] -= c * modulus_[j];
  }
  BaseElem r(d);
  for (std::size_t i = 0; i < d; ++i) r[i] = reduce(prod[i]);
  return r;
}

BaseElem BaseField::inv(const BaseElem &a) const {
  if (is_zero(a)) fail(ErrorCode::DivisionByZero, "inverse of zero");
  const std::size_t d = degree();
  if (d == 1) return {reduce(Rational(1) / a[0])};
  // Extended Euclid: s*a + t*mu = 1.
  const Integer &p = characteristic_;
  PrimePoly r0(modulus_.begin(), modulus_.end()), r1(a.begin(), a.end());
  trim(r1);
  PrimePoly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    PrimePoly s = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) fail(ErrorCode::InternalConsistency, "modulus is not irreducible");
  Rational c = prime_reduce(Rational(1) / r0[0], p);
  BaseElem out = zero();
  for (std::size_t i = 0; i < s0.size() && i < d; ++i) out[i] = prime_reduce(s0[i] * c, p);
  return out;
}

BaseElem BaseField::pow(const BaseElem &a, const Integer &e) const {
  if (e < 0) return pow(inv(a), -e);
  BaseElem result = one(), base = a;
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Integer BaseField::roots_of_unity_order() const {
  if (characteristic_ == 0) return lcm(Integer(2), cyclotomic_order_);
  return order() - 1;
}

BaseElem BaseField::root_of_unity(const Integer &d) const {
  if (d < 1) fail(ErrorCode::PreconditionFailed, "root of unity order must be >= 1");
  Integer available = roots_of_unity_order();
  if (!divides(d, available))
    fail(ErrorCode::RootOfUnityMissing,
         "primitive " + d.get_str() + "-th root of unity not in " + describe());
  if (characteristic_ == 0) {
    const Integer &n = cyclotomic_order_;
    if (divides(d, n)) return pow(generator(), n / d);
    // n odd: zeta_{2n} = -zeta_n^((n+1)/2)
    BaseElem z2n = neg(pow(generator(), (n + 1) / 2));
    return pow(z2n, (2 * n) / d);
  }
  Integer q1 = order() - 1;
  auto primes = factorize(q1);
  for (Integer idx = 1; idx <= q1; ++idx) {
    BaseElem g = element_at(idx);
    bool primitive = std::all_of(primes.begin(), primes.end(),
                                 [&](const auto &pe) { return !is_one(pow(g, q1 / pe.first)); });
    if (primitive) return pow(g, q1 / d);
  }
  fail(ErrorCode::InternalConsistency, "no primitive element found");
}

std::optional<Rational> BaseField::root_of_unity_log(const BaseElem &a, const Integer &d) const {
  BaseElem z = root_of_unity(d);
  BaseElem cur = one();
  for (Integer k = 0; k < d; ++k) {
    if (cur == a) {
      Rational r(k, d);
      r.canonicalize();
      return r;
    }
    cur = mul(cur, z);
  }
  return std::nullopt;
}

std::vector<BaseElem> BaseField::elements(const Integer &cap) const {
  if (!is_finite()) fail(ErrorCode::FieldTooLarge, "cannot enumerate an infinite field");
  Integer q = order();
  if (q > cap)
    fail(ErrorCode::FieldTooLarge, describe() + " has " + q.get_str() + " elements, cap is " + cap.get_str());
  std::vector<BaseElem> out;
  for (Integer i = 0; i < q; ++i) out.push_back(element_at(i));
  return out;
}

Integer BaseField::index_of(const BaseElem &a) const {
  if (!is_finite()) fail(ErrorCode::PreconditionFailed, "index_of requires a finite field");
  Integer idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * characteristic_ + a[i].get_num();
  return idx;
}

BaseElem BaseField::element_at(const Integer &index) const {
  BaseElem r = zero();
  Integer rest = index;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = Rational(mod(rest, characteristic_));
    rest /= characteristic_;
  }
  return r;
}

BaseElem BaseField::pth_root(const BaseElem &a) const {
  if (!is_finite()) fail(ErrorCode::PreconditionFailed, "p-th roots only in finite fields");
  // Frobenius has order m, so its inverse is x -> x^(p^(m-1)).
  return pow(a, aniso::pow(characteristic_, static_cast<unsigned long>(degree() - 1)));
}

std::string BaseField::to_string(const BaseElem &a, const std::string &generator_name) const {
  if (degree() == 1) return a[0].get_str();
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    std::string coeff = a[i].get_str();
    std::string term;
    if (i == 0) {
      term = coeff;
    } else {
      std::string mono = generator_name + (i > 1 ? "^" + std::to_string(i) : "");
      if (a[i] == 1) term = mono;
      else if (a[i] == -1) term = "-" + mono;
      else term = coeff + "*" + mono;
    }
    if (!out.empty()) out += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

std::string BaseField::describe() const {
  if (characteristic_ == 0) {
    if (cyclotomic_order_ <= 1) return "Q";
    return "Q(zeta_" + cyclotomic_order_.get_str() + ")";
  }
  if (degree() == 1) return "F_" + characteristic_.get_str();
  return "F_" + characteristic_.get_str() + "^" + std::to_string(degree());
}

bool BaseField::same_as(const BaseField &other) const {
  return characteristic_ == other.characteristic_ && modulus_ == other.modulus_;
}

} // namespace aniso::scalars
