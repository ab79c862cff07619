#include "aniso/scalars/polynomial.hpp"

#include "aniso/error.hpp"

#include <algorithm>
#include <map>

namespace aniso::scalars {

namespace {

// Lexicographic comparison, larger exponent vector first.
struct LexGreater {
  bool operator()(const Exponents &a, const Exponents &b) const { return a > b; }
};

using Accumulator = std::map<Exponents, BaseElem, LexGreater>;

} // namespace

Poly make_poly(const BaseFieldPtr &base, std::size_t nvars, std::vector<Term> terms) {
  Poly p(base, nvars);
  p.terms_ = std::move(terms);
  return p;
}

namespace {

Poly from_accumulator(const BaseFieldPtr &base, std::size_t nvars, Accumulator &acc) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto &[e, c] : acc)
    if (!base->is_zero(c)) terms.push_back(Term{e, std::move(c)});
  return make_poly(base, nvars, std::move(terms));
}

} // namespace

Poly Poly::constant(const BaseFieldPtr &base, std::size_t nvars, const BaseElem &c) {
  if (base->is_zero(c)) return Poly(base, nvars);
  return make_poly(base, nvars, {Term{Exponents(nvars, 0), c}});
}

Poly Poly::variable(const BaseFieldPtr &base, std::size_t nvars, std::size_t var) {
  Exponents e(nvars, 0);
  e.at(var) = 1;
  return make_poly(base, nvars, {Term{std::move(e), base->one()}});
}

Poly Poly::monomial(const BaseFieldPtr &base, Exponents exps, const BaseElem &c) {
  std::size_t n = exps.size();
  if (base->is_zero(c)) return Poly(base, n);
  return make_poly(base, n, {Term{std::move(exps), c}});
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto &e = terms_.front().exps;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

bool Poly::is_one() const { return is_constant() && !is_zero() && base_->is_one(terms_.front().coeff); }

BaseElem Poly::constant_coeff() const {
  if (!terms_.empty()) {
    const auto &last = terms_.back();
    if (std::all_of(last.exps.begin(), last.exps.end(), [](std::uint32_t x) { return x == 0; }))
      return last.coeff;
  }
  return base_->zero();
}

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto &t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto &t : terms_) {
    std::uint32_t s = 0;
    for (auto x : t.exps) s += x;
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::operator+(const Poly &o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exps > o.terms_[j].exps)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].exps > terms_[i].exps) {
      out.push_back(o.terms_[j++]);
    } else {
      BaseElem c = base_->add(terms_[i].coeff, o.terms_[j].coeff);
      if (!base_->is_zero(c)) out.push_back(Term{terms_[i].exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  return make_poly(base_, nvars_, std::move(out));
}

Poly Poly::operator-() const {
  std::vector<Term> out = terms_;
  for (auto &t : out) t.coeff = base_->neg(t.coeff);
  return make_poly(base_, nvars_, std::move(out));
}

Poly Poly::operator-(const Poly &o) const { return *this + (-o); }

Poly Poly::operator*(const Poly &o) const {
  if (is_zero() || o.is_zero()) return Poly(base_, nvars_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].exps, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_term(terms_[0].exps, terms_[0].coeff);
  Accumulator acc;
  Exponents e(nvars_);
  for (const auto &a : terms_) {
    for (const auto &b : o.terms_) {
      for (std::size_t k = 0; k < nvars_; ++k) e[k] = a.exps[k] + b.exps[k];
      BaseElem c = base_->mul(a.coeff, b.coeff);
      auto [it, inserted] = acc.try_emplace(e, c);
      if (!inserted) it->second = base_->add(it->second, c);
    }
  }
  return from_accumulator(base_, nvars_, acc);
}

bool Poly::operator==(const Poly &o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Poly Poly::scale(const BaseElem &c) const {
  if (base_->is_zero(c)) return Poly(base_, nvars_);
  std::vector<Term> out = terms_;
  for (auto &t : out) t.coeff = base_->mul(t.coeff, c);
  return make_poly(base_, nvars_, std::move(out));
}

Poly Poly::mul_term(const Exponents &exps, const BaseElem &c) const {
  if (base_->is_zero(c)) return Poly(base_, nvars_);
  std::vector<Term> out = terms_;
  for (auto &t : out) {
    for (std::size_t k = 0; k < nvars_; ++k) t.exps[k] += exps[k];
    t.coeff = base_->mul(t.coeff, c);
  }
  return make_poly(base_, nvars_, std::move(out));
}

Poly Poly::pow(unsigned long e) const {
  Poly result = constant(base_, nvars_, base_->one());
  Poly b = *this;
  while (e > 0) {
    if (e & 1UL) result = result * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  if (base_->is_one(leading_coeff())) return *this;
  return scale(base_->inv(leading_coeff()));
}

Poly Poly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto &t : terms_) {
    if (t.exps[var] == 0) continue;
    BaseElem c = base_->scale(t.coeff, Rational(t.exps[var]));
    if (base_->is_zero(c)) continue;
    Term nt{t.exps, std::move(c)};
    nt.exps[var] -= 1;
    out.push_back(std::move(nt));
  }
  // Decrementing one coordinate keeps lex order among surviving terms.
  return make_poly(base_, nvars_, std::move(out));
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto &t : terms_) {
    Term nt = t;
    nt.exps[var] = 0;
    buckets[t.exps[var]].push_back(std::move(nt));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto &b : buckets) {
    std::sort(b.begin(), b.end(), [](const Term &x, const Term &y) { return x.exps > y.exps; });
    out.push_back(make_poly(base_, nvars_, std::move(b)));
  }
  return out;
}

Poly Poly::from_coefficients(const BaseFieldPtr &base, std::size_t nvars, std::size_t var,
                             const std::vector<Poly> &coeffs) {
  Poly out(base, nvars);
  Exponents shift(nvars, 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    shift[var] = static_cast<std::uint32_t>(k);
    out = out + coeffs[k].mul_term(shift, base->one());
  }
  return out;
}

Poly Poly::substitute(std::size_t var, const Poly &value) const {
  auto coeffs = coefficients_in(var);
  Poly out(base_, nvars_);
  for (std::size_t k = coeffs.size(); k-- > 0;) out = out * value + coeffs[k];
  return out;
}

std::string Poly::to_string(const std::vector<std::string> &names, const std::string &generator_name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto &t : terms_) {
    std::string mono;
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (t.exps[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(k);
      if (t.exps[k] > 1) mono += "^" + std::to_string(t.exps[k]);
    }
    std::string coeff = base_->to_string(t.coeff, generator_name);
    bool compound = base_->degree() > 1 && coeff.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    bool negative = false;
    if (mono.empty()) {
      term = compound ? "(" + coeff + ")" : coeff;
    } else if (coeff == "1") {
      term = mono;
    } else if (coeff == "-1") {
      term = mono;
      negative = true;
    } else {
      term = (compound ? "(" + coeff + ")" : coeff) + "*" + mono;
    }
    if (!negative && term[0] == '-') {
      negative = true;
      term = term.substr(1);
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += negative ? " - " + term : " + " + term;
  }
  return out;
}

std::optional<Poly> try_divide(const Poly &a, const Poly &b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto &base = a.base();
  const std::size_t n = a.nvars();
  if (b.is_constant()) return a.scale(base->inv(b.leading_coeff()));
  Poly quotient(base, n);
  Poly rem = a;
  const Term &lb = b.leading();
  BaseElem lb_inv = base->inv(lb.coeff);
  Exponents shift(n);
  while (!rem.is_zero()) {
    const Term &lr = rem.leading();
    for (std::size_t k = 0; k < n; ++k) {
      if (lr.exps[k] < lb.exps[k]) return std::nullopt;
      shift[k] = lr.exps[k] - lb.exps[k];
    }
    BaseElem c = base->mul(lr.coeff, lb_inv);
    quotient = quotient + Poly::monomial(base, shift, c);
    rem = rem - b.mul_term(shift, c);
  }
  return quotient;
}

Poly exact_divide(const Poly &a, const Poly &b) {
  auto q = try_divide(a, b);
  if (!q) fail(ErrorCode::InternalConsistency, "inexact polynomial division");
  return *q;
}

Poly pseudo_remainder(const Poly &a, const Poly &b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  auto bc = b.coefficients_in(var);
  const Poly lead_b = bc.back();
  Poly r = a;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_in(var);
    if (dr < db) break;
    Poly lead_r = r.coefficients_in(var).back();
    Exponents shift(a.nvars(), 0);
    shift[var] = dr - db;
    r = r * lead_b - (b * lead_r).mul_term(shift, a.base()->one());
  }
  return r;
}

Poly content_in(const Poly &p, std::size_t var) {
  Poly g(p.base(), p.nvars());
  for (const auto &c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly gcd(const Poly &a, const Poly &b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto &base = a.base();
  const std::size_t n = a.nvars();
  Poly one = Poly::constant(base, n, base->one());
  if (a.is_constant() || b.is_constant()) return one;
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    const Poly &m = a.terms().size() == 1 ? a : b;
    const Poly &other = a.terms().size() == 1 ? b : a;
    Exponents e = m.leading().exps;
    for (const auto &t : other.terms())
      for (std::size_t k = 0; k < n; ++k) e[k] = std::min(e[k], t.exps[k]);
    return Poly::monomial(base, std::move(e), base->one());
  }

  std::size_t var = n;
  for (std::size_t k = 0; k < n && var == n; ++k)
    if (a.degree_in(k) > 0 || b.degree_in(k) > 0) var = k;

  // Only one side involves var: the gcd divides that side's content in var.
  if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);

  Poly ca = content_in(a, var), cb = content_in(b, var);
  Poly content_gcd = gcd(ca, cb);
  Poly f = exact_divide(a, ca).monic(), g = exact_divide(b, cb).monic();
  if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
  while (true) {
    Poly r = pseudo_remainder(f, g, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      g = one;
      break;
    }
    f = std::move(g);
    g = exact_divide(r, content_in(r, var)).monic();
  }
  if (!g.is_one()) g = exact_divide(g, content_in(g, var));
  return (content_gcd * g).monic();
}

} // namespace aniso::scalars
