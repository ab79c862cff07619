#include "aniso/quadform.hpp"

#include "aniso/scalars/algebraic.hpp"

#include <algorithm>
#include <map>

namespace aniso::quadform {

namespace {

FieldElement zero_of(const FieldDescriptor &f) { return FieldElement(f); }
FieldElement one_of(const FieldDescriptor &f) { return FieldElement::from_integer(f, 1); }

FieldElement dot(const Vector &a, const Vector &b) {
  FieldElement s = zero_of(a.at(0).field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vector scaled(const Vector &v, const FieldElement &c) {
  Vector r = v;
  for (auto &x : r) x *= c;
  return r;
}

Vector plus(const Vector &a, const Vector &b) {
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

bool is_zero_vector(const Vector &v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement &x) { return x.is_zero(); });
}

Vector unit(const FieldDescriptor &f, std::size_t n, std::size_t i) {
  Vector e(n, zero_of(f));
  e[i] = one_of(f);
  return e;
}

bool is_finite_char2(const FieldDescriptor &f) { return f.characteristic() == 2 && f.nvars() == 0; }

} // namespace

QuadraticForm::QuadraticForm(FMatrix upper) : q_(std::move(upper)) {
  if (q_.rows() != q_.cols() || q_.rows() == 0) fail(ErrorCode::SchemaError, "quadratic form matrix must be square and nonempty");
  for (std::size_t i = 0; i < q_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!q_(i, j).is_zero()) fail(ErrorCode::SchemaError, "quadratic form matrix must be upper triangular");
}

QuadraticForm QuadraticForm::diagonal(const Vector &coeffs) { return QuadraticForm(FMatrix::diagonal(coeffs)); }

FieldElement QuadraticForm::evaluate(const Vector &x) const {
  if (x.size() != dim()) fail(ErrorCode::SchemaError, "vector length does not match the form dimension");
  FieldElement s = zero_of(field());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = i; j < dim(); ++j)
      if (!q_(i, j).is_zero() && !x[j].is_zero()) s += q_(i, j) * x[i] * x[j];
  }
  return s;
}

QuadraticForm QuadraticForm::compose(const FMatrix &g) const {
  const std::size_t n = dim();
  if (g.rows() != n || g.cols() != n) fail(ErrorCode::SchemaError, "substitution matrix has the wrong size");
  FMatrix out(field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const FieldElement &c = q_(i, j);
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (g(i, k).is_zero() && g(j, k).is_zero()) continue;
        for (std::size_t l = k; l < n; ++l) {
          FieldElement t = g(i, k) * g(j, l);
          if (l != k) t += g(i, l) * g(j, k);
          if (!t.is_zero()) out(k, l) += c * t;
        }
      }
    }
  return QuadraticForm(out);
}

QuadraticForm QuadraticForm::scale(const FieldElement &c) const { return QuadraticForm(q_.scale(c)); }

std::string QuadraticForm::to_string(const std::vector<std::string> &names) const {
  auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "x" + std::to_string(i + 1); };
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      const FieldElement &c = q_(i, j);
      if (c.is_zero()) continue;
      std::string mono = i == j ? name(i) + "^2" : name(i) + "*" + name(j);
      std::string cs = c.to_string();
      std::string term;
      if (c.is_one()) term = mono;
      else if (cs.find_first_of("+-/ ", 1) != std::string::npos || cs[0] == '-') term = "(" + cs + ")*" + mono;
      else term = cs + "*" + mono;
      out += (out.empty() ? "" : " + ") + term;
    }
  return out.empty() ? "0" : out;
}

FMatrix associated_bilinear(const QuadraticForm &q) {
  const std::size_t n = q.dim();
  FMatrix b(q.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = q.coeff(i, i) + q.coeff(i, i);
    for (std::size_t j = i + 1; j < n; ++j) b(i, j) = b(j, i) = q.coeff(i, j);
  }
  return b;
}

bool is_nondegenerate(const QuadraticForm &q) { return !associated_bilinear(q).determinant().is_zero(); }

bool is_square(const FieldElement &c) { return c.is_zero() || scalars::try_root(c, 2).has_value(); }

Diagonalization diagonalize(const QuadraticForm &q) {
  const auto &f = q.field();
  if (f.characteristic() == 2) fail(ErrorCode::CharTwo, "diagonalization needs characteristic other than 2");
  const std::size_t n = q.dim();
  FMatrix b = associated_bilinear(q);
  FMatrix c = FMatrix::identity(f, n);
  // Congruence b <- E^T b E together with c <- c E.
  auto add_col = [&](std::size_t dst, std::size_t src, const FieldElement &t) {
    for (std::size_t r = 0; r < n; ++r) c(r, dst) += t * c(r, src);
    for (std::size_t r = 0; r < n; ++r) b(r, dst) += t * b(r, src);
    for (std::size_t r = 0; r < n; ++r) b(dst, r) += t * b(src, r);
  };
  auto swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(c(r, i), c(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(b(r, i), b(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(b(i, r), b(j, r));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (b(i, i).is_zero()) {
      std::size_t j = i + 1;
      while (j < n && b(j, j).is_zero()) ++j;
      if (j < n) {
        swap(i, j);
      } else {
        j = i + 1;
        while (j < n && b(i, j).is_zero()) ++j;
        if (j == n) fail(ErrorCode::DegenerateForm, "associated bilinear form is degenerate");
        add_col(i, j, one_of(f));
      }
    }
    for (std::size_t j = i + 1; j < n; ++j)
      if (!b(i, j).is_zero()) add_col(j, i, -(b(i, j) / b(i, i)));
  }
  Vector d;
  FieldElement half = FieldElement::from_rational(f, Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i) d.push_back(b(i, i) * half);
  if (q.compose(c) != QuadraticForm::diagonal(d)) fail(ErrorCode::InternalConsistency, "diagonalization check failed");
  return {c, d};
}

ArfNormalForm arf_normal_form(const QuadraticForm &q) {
  const auto &f = q.field();
  if (!is_finite_char2(f)) fail(ErrorCode::WrongCharacteristic, "Arf normal form needs a finite field of characteristic 2");
  const std::size_t n = q.dim();
  FMatrix b = associated_bilinear(q);
  if (b.determinant().is_zero()) fail(ErrorCode::DegenerateForm, "associated bilinear form is degenerate");
  auto bil = [&](const Vector &v, const Vector &w) { return dot(v, b.apply(w)); };
  const auto &base = f.base_field();
  auto sqrt = [&](const FieldElement &x) { return FieldElement::from_base(f, base->pth_root(x.constant_value())); };

  std::vector<Vector> rest;
  for (std::size_t i = 0; i < n; ++i) rest.push_back(unit(f, n, i));
  struct Block {
    Vector e, fv;
    FieldElement c;
  };
  std::vector<Block> blocks;
  while (!rest.empty()) {
    Vector e = rest.front();
    std::size_t k = 1;
    while (k < rest.size() && bil(e, rest[k]).is_zero()) ++k;
    if (k == rest.size()) fail(ErrorCode::DegenerateForm, "associated bilinear form is degenerate");
    Vector fv = scaled(rest[k], bil(e, rest[k]).inverse());
    std::vector<Vector> next;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (i == k) continue;
      next.push_back(plus(plus(rest[i], scaled(e, bil(rest[i], fv))), scaled(fv, bil(rest[i], e))));
    }
    rest = std::move(next);
    FieldElement alpha = q.evaluate(e), beta = q.evaluate(fv);
    if (alpha.is_zero() && !beta.is_zero()) {
      std::swap(e, fv);
      std::swap(alpha, beta);
    }
    if (alpha.is_zero()) {
      e = plus(e, fv);
    } else {
      FieldElement s = sqrt(alpha);
      e = scaled(e, s.inverse());
      fv = scaled(fv, s);
    }
    blocks.push_back({e, fv, q.evaluate(fv)});
  }
  // Fold every block into the first one, leaving hyperbolic pairs behind.
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    auto &b1 = blocks[0];
    auto &b2 = blocks[i];
    Vector E = plus(b1.e, b2.e);
    Vector F = plus(b2.fv, scaled(E, b2.c));
    b1.fv = plus(plus(b1.fv, scaled(E, b2.c)), F);
    b1.c = b1.c + b2.c;
    b2 = {E, F, zero_of(f)};
  }
  // Smallest representative of a + {t^2 + t}.
  FieldElement a = blocks[0].c;
  FieldElement best_t = zero_of(f);
  Integer best_index = base->index_of(a.constant_value());
  for (const auto &t : base->elements(Integer(1) << 16)) {
    FieldElement tt = FieldElement::from_base(f, t);
    Integer idx = base->index_of((a + tt * tt + tt).constant_value());
    if (idx < best_index) {
      best_index = idx;
      best_t = tt;
    }
  }
  blocks[0].fv = plus(blocks[0].fv, scaled(blocks[0].e, best_t));
  a = a + best_t * best_t + best_t;

  FMatrix change(f, n, n), normal(f, n, n);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t r = 0; r < n; ++r) {
      change(r, 2 * i) = blocks[i].e[r];
      change(r, 2 * i + 1) = blocks[i].fv[r];
    }
    normal(2 * i, 2 * i + 1) = one_of(f);
  }
  normal(0, 0) = one_of(f);
  normal(1, 1) = a;
  QuadraticForm nf(normal);
  if (q.compose(change) != nf) fail(ErrorCode::InternalConsistency, "Arf normal form check failed");
  std::optional<Vector> iso;
  if (blocks.size() > 1) iso = blocks[1].e;
  else if (a.is_zero()) iso = plus(blocks[0].e, blocks[0].fv);
  if (iso && !q.evaluate(*iso).is_zero()) fail(ErrorCode::InternalConsistency, "isotropic vector check failed");
  return {a, change, nf, iso};
}

bool arf_invariant_class(const FieldElement &a, const FieldElement &a2, const Integer &cap) {
  if (!is_finite_char2(a.field())) fail(ErrorCode::WrongCharacteristic, "Arf classes need a finite field of characteristic 2");
  if (a.field() != a2.field()) fail(ErrorCode::DescriptorMismatch, "Arf parameters over different fields");
  auto image = scalars::artin_schreier_image(a.field(), cap);
  FieldElement d = a - a2;
  return std::find(image.begin(), image.end(), d) != image.end();
}

std::optional<Vector> find_isotropic_exhaustive(const QuadraticForm &q, const Integer &cap) {
  const auto &f = q.field();
  if (f.characteristic() == 0 || f.nvars() != 0) fail(ErrorCode::WrongCharacteristic, "exhaustive search needs a finite field");
  const auto &base = f.base_field();
  Integer total = pow(base->order(), q.dim());
  if (total > cap) fail(ErrorCode::GroupTooLarge, "vector space of size " + total.get_str() + " exceeds the cap");
  auto elems = base->elements(base->order());
  std::vector<std::size_t> digits(q.dim(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && digits[i] == elems.size() - 1) digits[i++] = 0;
    if (i == digits.size()) break;
    ++digits[i];
    Vector v;
    for (auto d : digits) v.push_back(FieldElement::from_base(f, elems[d]));
    if (q.evaluate(v).is_zero()) return v;
  }
  return std::nullopt;
}

IsotropicWitness extract_isotropic_from_order_p(const FMatrix &g, const QuadraticForm &q) {
  const auto &f = q.field();
  const Integer &p = f.characteristic();
  if (p < 3) fail(ErrorCode::NotOrderP, "needs characteristic p > 2");
  const std::size_t n = q.dim();
  if (g.rows() != n || g.cols() != n) fail(ErrorCode::SchemaError, "isometry has the wrong size");
  FMatrix id = FMatrix::identity(f, n);
  if (g == id || !g.pow(p.get_si()).is_identity())
    fail(ErrorCode::NotOrderP, "matrix does not have order exactly " + p.get_str());
  if (q.compose(g) != q) fail(ErrorCode::NotIsometry, "matrix does not preserve the form");
  FMatrix nil = g - id;
  std::vector<FMatrix> powers{id, nil};
  while (!powers.back().is_zero()) powers.push_back(powers.back() * nil);
  const std::size_t k = powers.size() - 2; // largest k with N^k != 0
  std::size_t col = 0;
  while (col < n) {
    bool nonzero = false;
    for (std::size_t r = 0; r < n; ++r) nonzero = nonzero || !powers[k](r, col).is_zero();
    if (nonzero) break;
    ++col;
  }
  Vector e = unit(f, n, col);
  Vector v2 = powers[k - 1].apply(e), v1 = powers[k].apply(e);
  for (const auto &x : v1)
    if (!x.is_zero()) {
      FieldElement s = x.inverse();
      v1 = scaled(v1, s);
      v2 = scaled(v2, s);
      break;
    }
  FieldElement qv = q.evaluate(v1);
  if (!qv.is_zero()) fail(ErrorCode::InternalConsistency, "fixed vector of the Jordan chain is not isotropic");
  return {v1, v2, qv};
}

std::optional<FieldElement> scaling_factor(const FMatrix &g, const QuadraticForm &q) {
  QuadraticForm qg = q.compose(g);
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = i; j < q.dim(); ++j)
      if (!q.coeff(i, j).is_zero()) {
        FieldElement lambda = qg.coeff(i, j) / q.coeff(i, j);
        if (qg == q.scale(lambda)) return lambda;
        return std::nullopt;
      }
  return std::nullopt;
}

std::optional<long> projective_order(const FMatrix &g, long bound) {
  FMatrix power = g;
  for (long k = 1; k <= bound; ++k) {
    if (power.scalar_value()) return k;
    power = power * g;
  }
  return std::nullopt;
}

InvolutionReport involution_check(const FMatrix &g, const QuadraticForm &q) {
  const auto &f = q.field();
  if (f.characteristic() == 2) fail(ErrorCode::CharTwo, "involution check needs characteristic other than 2");
  auto lambda = scaling_factor(g, q);
  if (!lambda) fail(ErrorCode::NotIsometry, "matrix does not preserve the form up to a scalar");
  auto ord = projective_order(g, 8);
  if (!ord || (*ord != 1 && *ord != 2 && *ord != 4))
    fail(ErrorCode::OrderExceedsBound, "projective order is not 1, 2 or 4");
  FieldElement c = *g.pow(*ord).scalar_value();
  auto root = scalars::try_root(c, *ord);
  if (!root) fail(ErrorCode::NotDiagonalizable, "eigenvalues are not in " + f.to_string());
  std::vector<FieldElement> unity{one_of(f), -one_of(f)};
  if (*ord == 4) {
    try {
      FieldElement i = FieldElement::root_of_unity(f, 4);
      unity.push_back(i);
      unity.push_back(-i);
    } catch (const Error &) {
    }
  }
  InvolutionReport rep{*lambda, lambda->is_one(), *ord, (g * g).is_identity(), {}};
  const std::size_t n = q.dim();
  std::size_t total = 0;
  for (const auto &z : unity) {
    FieldElement rho = *root * z;
    if (rho.pow(*ord) != c) continue;
    if (std::any_of(rep.eigenvalues.begin(), rep.eigenvalues.end(), [&](const auto &e) { return e.first == rho; })) continue;
    std::size_t mult = n - (g - FMatrix::scalar(rho, n)).rank();
    if (mult) rep.eigenvalues.push_back({rho, mult});
    total += mult;
  }
  if (total != n) fail(ErrorCode::NotDiagonalizable, "matrix is not diagonalizable over " + f.to_string());
  if (rep.orthogonal && !rep.square_is_identity)
    fail(ErrorCode::OrderExceedsBound, "orthogonal lift of finite order is not an involution");
  return rep;
}

// ---------------------------------------------------------------------------

std::string subset_name(unsigned mask) {
  std::string s = "{";
  for (unsigned i = 0; (mask >> i) != 0; ++i)
    if (mask & (1u << i)) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

FieldElement pfister_coefficient(const FieldDescriptor &field, unsigned mask) {
  FieldElement c = one_of(field);
  for (unsigned i = 0; (mask >> i) != 0; ++i)
    if (mask & (1u << i)) c *= FieldElement::variable(field, "a" + std::to_string(i + 1));
  return c;
}

namespace {

FieldDescriptor pfister_field(unsigned k) {
  std::vector<std::string> vars;
  for (unsigned i = 1; i <= k; ++i) vars.push_back("a" + std::to_string(i));
  return FieldDescriptor::function_field(FieldDescriptor::rationals(), vars);
}

// q_level on the first 2^level coordinates.
FieldElement pfister_value(const FieldDescriptor &f, unsigned level, const Vector &x) {
  FieldElement s = zero_of(f);
  for (unsigned m = 0; m < (1u << level); ++m)
    if (!x[m].is_zero()) s += pfister_coefficient(f, m) * x[m] * x[m];
  return s;
}

} // namespace

Pfister pfister_build(unsigned k) {
  if (k < 1 || k > 5) fail(ErrorCode::KTooLarge, "Pfister forms are supported for 1 <= k <= 5");
  auto f = pfister_field(k);
  const unsigned n = 1u << k, full = n - 1;
  Vector coeffs;
  for (unsigned m = 0; m < n; ++m) coeffs.push_back(pfister_coefficient(f, m));
  QuadraticForm form = QuadraticForm::diagonal(coeffs);
  FMatrix tau(f, n, n);
  for (unsigned m = 0; m < n; ++m) tau(m, full ^ m) = pfister_coefficient(f, full ^ m);
  FieldElement lambda = pfister_coefficient(f, full);
  if (form.compose(tau) != form.scale(lambda)) fail(ErrorCode::InternalConsistency, "q o tau != a_{1..k} q");
  std::optional<FMatrix> sigma;
  if (k >= 2) {
    Vector d(n, one_of(f));
    d[1] = d[2] = -one_of(f);
    sigma = FMatrix::diagonal(d);
    if (form.compose(*sigma) != form) fail(ErrorCode::InternalConsistency, "q o sigma != q");
  }
  return {k, f, form, tau, sigma, lambda};
}

RefutationTrace pfister_refute_point(unsigned k, const Vector &candidate) {
  if (k < 1 || k > 5) fail(ErrorCode::KTooLarge, "Pfister forms are supported for 1 <= k <= 5");
  const unsigned n = 1u << k;
  if (candidate.size() != n) fail(ErrorCode::SchemaError, "candidate needs " + std::to_string(n) + " coordinates");
  auto f = pfister_field(k);
  for (const auto &c : candidate) {
    if (c.field() != f) fail(ErrorCode::DescriptorMismatch, "candidate coordinates must lie in " + f.to_string());
    if (!c.denominator().is_one()) fail(ErrorCode::SchemaError, "candidate coordinates must be polynomials");
  }
  if (is_zero_vector(candidate)) fail(ErrorCode::AllZeroCandidate, "all candidate coordinates are zero");
  RefutationTrace trace{pfister_value(f, k, candidate), {}};
  if (trace.value.is_zero()) fail(ErrorCode::InternalConsistency, "candidate is a zero of the Pfister form");
  Vector cur = candidate;
  for (unsigned level = k; level >= 1; --level) {
    const std::size_t var = level - 1;
    unsigned top = 0;
    for (const auto &c : cur) top = std::max(top, c.numerator().degree_in(var));
    const unsigned half = 1u << (level - 1);
    Vector lower, upper;
    for (unsigned m = 0; m < 2 * half; ++m) {
      auto parts = cur[m].numerator().coefficients_in(var);
      FieldElement lead = top < parts.size()
                              ? FieldElement::from_polys(f, parts[top], scalars::Poly::constant(f.base_field(), f.nvars(), f.base_field()->one()))
                              : zero_of(f);
      (m < half ? lower : upper).push_back(lead);
    }
    if (level == 1) {
      trace.steps.push_back({1, top, false, pfister_value(f, 1, cur)});
      break;
    }
    bool use_upper = is_zero_vector(lower);
    Vector chosen = use_upper ? upper : lower;
    FieldElement v = pfister_value(f, level - 1, chosen);
    if (v.is_zero()) fail(ErrorCode::InternalConsistency, "descent reached a zero of q_" + std::to_string(level - 1));
    trace.steps.push_back({level, top, use_upper, v});
    cur = chosen;
  }
  return trace;
}

Vector random_pfister_candidate(unsigned k, unsigned max_degree, std::mt19937_64 &rng) {
  if (k < 1 || k > 5) fail(ErrorCode::KTooLarge, "Pfister forms are supported for 1 <= k <= 5");
  auto f = pfister_field(k);
  const unsigned n = 1u << k;
  std::uniform_int_distribution<int> coeff(-3, 3), terms(0, 3), deg(0, static_cast<int>(max_degree));
  std::uniform_int_distribution<unsigned> var(0, k - 1);
  while (true) {
    Vector out;
    for (unsigned m = 0; m < n; ++m) {
      FieldElement p = zero_of(f);
      int t = terms(rng);
      for (int s = 0; s < t; ++s) {
        FieldElement mono = FieldElement::from_integer(f, coeff(rng));
        int d = deg(rng);
        for (int e = 0; e < d; ++e) mono *= FieldElement::variable(f, "a" + std::to_string(var(rng) + 1));
        p += mono;
      }
      out.push_back(p);
    }
    if (!is_zero_vector(out)) return out;
  }
}

PfisterGroup pfister_group_closure(unsigned k) {
  if (k < 2 || k > 5) fail(ErrorCode::KTooLarge, "the Pfister group needs 2 <= k <= 5");
  Pfister p = pfister_build(k);
  const FMatrix &s = *p.sigma, &t = p.tau;
  auto raw = scalars::matrix_group_closure({s, t}, 4096, true);
  PfisterGroup g{{}, {}, {}, false, FMatrix(p.field, 1, 1), false, false, false, true};
  std::map<std::string, std::size_t> index;
  for (const auto &m : raw) {
    FMatrix nm = m.projective_normalized();
    index.emplace(nm.to_string(), g.elements.size());
    g.elements.push_back(nm);
  }
  for (const auto &a : g.elements) {
    std::vector<std::size_t> row;
    for (const auto &b : g.elements) {
      auto it = index.find((a * b).projective_normalized().to_string());
      if (it == index.end()) fail(ErrorCode::InternalConsistency, "closure is not closed under multiplication");
      row.push_back(it->second);
    }
    g.table.push_back(std::move(row));
  }
  for (const auto &e : g.elements) {
    auto o = projective_order(e, 8);
    g.orders.push_back(o ? *o : -1);
    if (!o || (*o != 1 && *o != 2 && *o != 4)) g.orders_in_1_2_4 = false;
  }
  g.non_abelian = (s * t).projective_normalized() != (t * s).projective_normalized();
  g.iota = (s * t * s * t).projective_normalized();
  g.iota_nontrivial = !g.iota.scalar_value();
  g.iota_involution = (g.iota * g.iota).scalar_value().has_value();
  Integer bound = pow(Integer(8), (1u << k) - 1);
  g.order_divides_bound = divides(Integer(g.elements.size()), bound);
  return g;
}

} // namespace aniso::quadform
