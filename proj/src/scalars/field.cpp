#include "aniso/scalars/field.hpp"

#include "aniso/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace aniso::scalars {

struct FieldDescriptor::Impl {
  FieldKind kind = FieldKind::Rationals;
  FieldKind coeff_kind = FieldKind::Rationals;
  Integer cyclotomic_order = 1;
  Integer characteristic = 0;
  unsigned extension_degree = 1;
  std::vector<std::string> variables;
  BaseFieldPtr base;
};

FieldDescriptor FieldDescriptor::rationals() {
  static const FieldDescriptor q = [] {
    auto impl = std::make_shared<Impl>();
    impl->base = BaseField::rationals();
    return FieldDescriptor(impl);
  }();
  return q;
}

FieldDescriptor FieldDescriptor::cyclotomic(const Integer &n) {
  if (n < 1) fail(ErrorCode::PreconditionFailed, "cyclotomic order N must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = impl->coeff_kind = FieldKind::Cyclotomic;
  impl->cyclotomic_order = n;
  impl->base = BaseField::cyclotomic(n);
  return FieldDescriptor(impl);
}

FieldDescriptor FieldDescriptor::prime_field(const Integer &p) {
  auto impl = std::make_shared<Impl>();
  impl->kind = impl->coeff_kind = FieldKind::PrimeField;
  impl->base = BaseField::finite(p, 1);
  impl->characteristic = p;
  impl->cyclotomic_order = 0;
  return FieldDescriptor(impl);
}

FieldDescriptor FieldDescriptor::finite_field(const Integer &p, unsigned m) {
  if (m < 1) fail(ErrorCode::PreconditionFailed, "finite field degree m must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = impl->coeff_kind = FieldKind::FiniteField;
  impl->base = BaseField::finite(p, m);
  impl->characteristic = p;
  impl->extension_degree = m;
  impl->cyclotomic_order = 0;
  return FieldDescriptor(impl);
}

FieldDescriptor FieldDescriptor::function_field(const FieldDescriptor &base, std::vector<std::string> variables) {
  auto impl = std::make_shared<Impl>(*base.impl_);
  impl->kind = FieldKind::FunctionField;
  std::vector<std::string> all = base.impl_->variables;
  for (auto &v : variables) all.push_back(std::move(v));
  std::set<std::string> seen;
  for (const auto &v : all) {
    bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') &&
              std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    if (!ok) fail(ErrorCode::SchemaError, "invalid variable name '" + v + "'");
    if (!seen.insert(v).second) fail(ErrorCode::SchemaError, "duplicate variable name '" + v + "'");
    if (v == base.generator_name()) fail(ErrorCode::SchemaError, "variable name '" + v + "' is reserved");
  }
  if (all.empty()) fail(ErrorCode::SchemaError, "function field needs at least one variable");
  impl->variables = std::move(all);
  return FieldDescriptor(impl);
}

FieldKind FieldDescriptor::kind() const { return impl_->kind; }
const Integer &FieldDescriptor::characteristic() const { return impl_->characteristic; }
const std::vector<std::string> &FieldDescriptor::variables() const { return impl_->variables; }
const Integer &FieldDescriptor::cyclotomic_order() const { return impl_->cyclotomic_order; }
unsigned FieldDescriptor::extension_degree() const { return impl_->extension_degree; }
const BaseFieldPtr &FieldDescriptor::base_field() const { return impl_->base; }

FieldDescriptor FieldDescriptor::coefficient_field() const {
  if (impl_->kind != FieldKind::FunctionField) return *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->kind = impl->coeff_kind;
  impl->variables.clear();
  return FieldDescriptor(impl);
}

std::string FieldDescriptor::generator_name() const {
  return impl_->characteristic == 0 ? "zeta" : "g";
}

std::optional<std::size_t> FieldDescriptor::variable_index(const std::string &name) const {
  const auto &v = impl_->variables;
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

bool FieldDescriptor::operator==(const FieldDescriptor &o) const {
  if (impl_ == o.impl_) return true;
  const Impl &a = *impl_, &b = *o.impl_;
  return a.kind == b.kind && a.coeff_kind == b.coeff_kind && a.cyclotomic_order == b.cyclotomic_order &&
         a.characteristic == b.characteristic && a.extension_degree == b.extension_degree &&
         a.variables == b.variables;
}

std::string FieldDescriptor::to_string() const {
  std::string coeff;
  switch (impl_->coeff_kind) {
  case FieldKind::Rationals: coeff = "Q"; break;
  case FieldKind::Cyclotomic: coeff = "Q(zeta_" + impl_->cyclotomic_order.get_str() + ")"; break;
  case FieldKind::PrimeField: coeff = "F_" + impl_->characteristic.get_str(); break;
  case FieldKind::FiniteField:
    coeff = "F_" + impl_->characteristic.get_str() + "^" + std::to_string(impl_->extension_degree);
    break;
  case FieldKind::FunctionField: break;
  }
  if (impl_->variables.empty()) return coeff;
  std::string vars;
  for (const auto &v : impl_->variables) vars += (vars.empty() ? "" : ",") + v;
  return coeff + "(" + vars + ")";
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const FieldDescriptor &field)
    : field_(field), num_(field.base_field(), field.nvars()),
      den_(Poly::constant(field.base_field(), field.nvars(), field.base_field()->one())) {}

FieldElement::FieldElement(FieldDescriptor field, Poly num, Poly den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {}

FieldElement FieldElement::from_polys(const FieldDescriptor &field, Poly num, Poly den) {
  const auto &base = field.base_field();
  const std::size_t n = field.nvars();
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
  Poly one = Poly::constant(base, n, base->one());
  if (num.is_zero()) return FieldElement(field, std::move(num), one);
  if (den.is_constant()) {
    if (!den.is_one()) num = num.scale(base->inv(den.leading_coeff()));
    return FieldElement(field, std::move(num), one);
  }
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = exact_divide(num, g);
    den = exact_divide(den, g);
  }
  if (!base->is_one(den.leading_coeff())) {
    BaseElem inv = base->inv(den.leading_coeff());
    num = num.scale(inv);
    den = den.scale(inv);
  }
  if (den.is_one()) den = one;
  return FieldElement(field, std::move(num), std::move(den));
}

FieldElement FieldElement::from_integer(const FieldDescriptor &field, const Integer &n) {
  return from_rational(field, Rational(n));
}

FieldElement FieldElement::from_rational(const FieldDescriptor &field, const Rational &q) {
  return from_base(field, field.base_field()->from_rational(q));
}

FieldElement FieldElement::from_base(const FieldDescriptor &field, const BaseElem &c) {
  FieldElement r(field);
  r.num_ = Poly::constant(field.base_field(), field.nvars(), c);
  return r;
}

FieldElement FieldElement::variable(const FieldDescriptor &field, const std::string &name) {
  auto idx = field.variable_index(name);
  if (!idx) fail(ErrorCode::SchemaError, "unknown variable '" + name + "' in " + field.to_string());
  FieldElement r(field);
  r.num_ = Poly::variable(field.base_field(), field.nvars(), *idx);
  return r;
}

FieldElement FieldElement::generator(const FieldDescriptor &field) {
  return from_base(field, field.base_field()->generator());
}

FieldElement FieldElement::root_of_unity(const FieldDescriptor &field, const Integer &d) {
  return from_base(field, field.base_field()->root_of_unity(d));
}

BaseElem FieldElement::constant_value() const {
  if (!is_constant()) fail(ErrorCode::PreconditionFailed, "element " + to_string() + " is not constant");
  return num_.constant_coeff();
}

void FieldElement::check_same(const FieldElement &o) const {
  if (field_ != o.field_)
    fail(ErrorCode::DescriptorMismatch, "field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
}

FieldElement FieldElement::operator+(const FieldElement &o) const {
  check_same(o);
  if (den_.is_one() && o.den_.is_one()) return FieldElement(field_, num_ + o.num_, den_);
  if (den_ == o.den_) return from_polys(field_, num_ + o.num_, den_);
  if (den_.is_one()) return FieldElement(field_, num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return FieldElement(field_, num_ + o.num_ * den_, den_);
  // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (g b' d'), and only g can share factors with the new numerator.
  Poly g = gcd(den_, o.den_);
  if (g.is_one()) return FieldElement(field_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly b1 = exact_divide(den_, g), d1 = exact_divide(o.den_, g);
  Poly num = num_ * d1 + o.num_ * b1;
  if (num.is_zero()) return FieldElement(field_);
  Poly h = gcd(num, g);
  if (!h.is_one()) {
    num = exact_divide(num, h);
    g = exact_divide(g, h);
  }
  return from_polys(field_, std::move(num), g * b1 * d1);
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, -num_, den_); }

FieldElement FieldElement::operator-(const FieldElement &o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement &o) const {
  check_same(o);
  if (den_.is_one() && o.den_.is_one()) return FieldElement(field_, num_ * o.num_, den_);
  if (is_zero() || o.is_zero()) return FieldElement(field_);
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly n1 = g1.is_one() ? num_ : exact_divide(num_, g1);
  Poly d2 = g1.is_one() ? o.den_ : exact_divide(o.den_, g1);
  Poly n2 = g2.is_one() ? o.num_ : exact_divide(o.num_, g2);
  Poly d1 = g2.is_one() ? den_ : exact_divide(den_, g2);
  return from_polys(field_, n1 * n2, d1 * d2);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in " + field_.to_string());
  return from_polys(field_, den_, num_);
}

FieldElement FieldElement::operator/(const FieldElement &o) const {
  check_same(o);
  return *this * o.inverse();
}

FieldElement FieldElement::pow(const Integer &e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return from_integer(field_, 1);
  if (den_.is_one()) {
    FieldElement r(field_);
    r.num_ = num_.pow(e.get_ui());
    return r;
  }
  // gcd(num, den) = 1 is preserved by powers.
  return FieldElement(field_, num_.pow(e.get_ui()), den_.pow(e.get_ui()));
}

bool FieldElement::operator==(const FieldElement &o) const {
  return field_ == o.field_ && num_ == o.num_ && den_ == o.den_;
}

std::vector<long> FieldElement::variable_degrees() const {
  std::vector<long> out(field_.nvars());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = static_cast<long>(num_.degree_in(k)) - static_cast<long>(den_.degree_in(k));
  return out;
}

namespace {

bool has_inner_sign(const std::string &s) { return s.find_first_of("+-", 1) != std::string::npos; }

} // namespace

std::string FieldElement::to_string() const {
  const auto &names = field_.variables();
  std::string gen = field_.generator_name();
  std::string n = num_.to_string(names, gen);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(names, gen);
  auto atomic = [](const std::string &s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^'; });
  };
  std::string head = num_.terms().size() > 1 || has_inner_sign(n) ? "(" + n + ")" : n;
  return head + "/" + (atomic(d) ? d : "(" + d + ")");
}

// ---------------------------------------------------------------------------

namespace {

class ExpressionParser {
public:
  ExpressionParser(const FieldDescriptor &field, const std::string &text) : field_(field), text_(text) {}

  FieldElement parse() {
    FieldElement r = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void error(const std::string &what) {
    fail(ErrorCode::SchemaError, "cannot parse '" + text_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    FieldElement r = term();
    while (true) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }

  FieldElement term() {
    FieldElement r = unary();
    while (true) {
      if (accept('*')) r = r * unary();
      else if (accept('/')) r = r / unary();
      else return r;
    }
  }

  FieldElement unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  FieldElement power() {
    FieldElement base = atom();
    if (accept('^')) {
      skip_ws();
      bool negative = accept('-');
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected integer exponent");
      Integer e(text_.substr(start, pos_ - start), 10);
      return base.pow(negative ? Integer(-e) : e);
    }
    return base;
  }

  FieldElement atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (accept('(')) {
      FieldElement r = expr();
      if (!accept(')')) error("expected ')'");
      return r;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return FieldElement::from_integer(field_, Integer(text_.substr(start, pos_ - start), 10));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (field_.variable_index(name)) return FieldElement::variable(field_, name);
      if (name == field_.generator_name()) return FieldElement::generator(field_);
      error("unknown identifier '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const FieldDescriptor &field_;
  const std::string &text_;
  std::size_t pos_ = 0;
};

} // namespace

FieldElement parse_element(const FieldDescriptor &field, const std::string &text) {
  return ExpressionParser(field, text).parse();
}

} // namespace aniso::scalars
