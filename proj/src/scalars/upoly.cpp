#include "aniso/scalars/upoly.hpp"

#include "aniso/error.hpp"

namespace aniso::scalars {

UPoly::UPoly(FieldDescriptor field, std::vector<FieldElement> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto &c : coeffs_)
    if (c.field() != field_) fail(ErrorCode::DescriptorMismatch, "coefficient outside " + field_.to_string());
  trim();
}

UPoly UPoly::monomial(const FieldElement &c, std::size_t degree) {
  std::vector<FieldElement> v(degree + 1, FieldElement(c.field()));
  v[degree] = c;
  return UPoly(c.field(), std::move(v));
}

UPoly UPoly::linear(const FieldElement &c) {
  return UPoly(c.field(), {-c, FieldElement::from_integer(c.field(), 1)});
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement UPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : FieldElement(field_); }

UPoly UPoly::operator+(const UPoly &o) const {
  if (field_ != o.field_) fail(ErrorCode::DescriptorMismatch, "polynomials over different fields");
  std::vector<FieldElement> v(std::max(coeffs_.size(), o.coeffs_.size()), FieldElement(field_));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return UPoly(field_, std::move(v));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto &c : r.coeffs_) c = -c;
  return r;
}

UPoly UPoly::operator-(const UPoly &o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly &o) const {
  if (field_ != o.field_) fail(ErrorCode::DescriptorMismatch, "polynomials over different fields");
  if (is_zero() || o.is_zero()) return UPoly(field_);
  std::vector<FieldElement> v(coeffs_.size() + o.coeffs_.size() - 1, FieldElement(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UPoly(field_, std::move(v));
}

UPoly UPoly::scale(const FieldElement &c) const {
  UPoly r = *this;
  for (auto &x : r.coeffs_) x = x * c;
  r.trim();
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  return scale(leading().inverse());
}

UPoly UPoly::derivative() const {
  std::vector<FieldElement> v;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    v.push_back(coeffs_[k] * FieldElement::from_integer(field_, static_cast<long>(k)));
  return UPoly(field_, std::move(v));
}

FieldElement UPoly::evaluate(const FieldElement &x) const {
  FieldElement r(field_);
  for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * x + coeffs_[k];
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly &d) const {
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  UPoly r = *this;
  if (degree() < d.degree()) return {UPoly(field_), r};
  std::vector<FieldElement> q(coeffs_.size() - d.coeffs_.size() + 1, FieldElement(field_));
  FieldElement lead_inv = d.leading().inverse();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
    FieldElement c = r.leading() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < d.coeffs_.size(); ++j) r.coeffs_[shift + j] -= c * d.coeffs_[j];
    r.coeffs_.pop_back();
    r.trim();
  }
  return {UPoly(field_, std::move(q)), r};
}

std::string UPoly::to_string(const std::string &var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const auto &c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (negative) cs = cs.substr(1);
    bool compound = cs.find_first_of("+-/", 0) != std::string::npos;
    std::string mono;
    if (k == 0) mono = compound ? "(" + cs + ")" : cs;
    else {
      std::string power = k == 1 ? var : var + "^" + std::to_string(k);
      if (cs == "1") mono = power;
      else mono = (compound ? "(" + cs + ")" : cs) + "*" + power;
    }
    if (out.empty()) out = negative ? "-" + mono : mono;
    else out += (negative ? " - " : " + ") + mono;
  }
  return out;
}

UPoly gcd(const UPoly &a, const UPoly &b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

} // namespace aniso::scalars
