#include "aniso/cli.hpp"

#include <cstdlib>
#include <regex>

namespace aniso::cli {

using scalars::FieldDescriptor;
using scalars::FieldElement;
using scalars::FMatrix;

namespace {

[[noreturn]] void schema(const std::string &path, const std::string &what) {
  fail(ErrorCode::SchemaError, path + ": " + what);
}

const Json &member(const Json &j, const std::string &key, const std::string &path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing field");
  return *it;
}

std::string text_of(const Json &j, const std::string &path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  schema(path, "expected a decimal string or integer");
}

// Re-labels parser failures with the JSON path so the caller sees where they came from.
template <class F> auto at_path(const std::string &path, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error &e) {
    bool located = e.what()[0] == '$';
    if (!located && (e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::DivisionByZero)) schema(path, e.what());
    throw;
  }
}

std::vector<std::size_t> parse_index_key(const std::string &key, const std::string &path) {
  std::vector<std::size_t> out;
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty() || part.find_first_not_of("0123456789 ") != std::string::npos)
      schema(path, "bad index key '" + key + "'");
    out.push_back(std::stoul(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

scalars::Poly read_poly(const FieldDescriptor &f, const Json &j, const std::string &path) {
  if (!j.is_object()) schema(path, "expected a coefficient map keyed by exponent vectors");
  FieldDescriptor coeff = f.coefficient_field();
  scalars::Poly out(f.base_field(), f.nvars());
  for (const auto &[key, value] : j.items()) {
    std::string p = path + "[\"" + key + "\"]";
    auto exps = parse_index_key(key, p);
    if (exps.size() != f.nvars()) schema(p, "exponent vector must have " + std::to_string(f.nvars()) + " entries");
    FieldElement c = at_path(p, [&] { return scalars::parse_element(coeff, text_of(value, p)); });
    scalars::Exponents e(exps.begin(), exps.end());
    out = out + scalars::Poly::monomial(f.base_field(), e, c.constant_value());
  }
  return out;
}

FieldDescriptor parse_field_text(const std::string &text, const std::string &path) {
  static const std::regex re(R"(^\s*(Q|Q\(zeta_(\d+)\)|F_(\d+)(\^(\d+))?)\s*(\(([^()]*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) schema(path, "unrecognized field '" + text + "'");
  FieldDescriptor base = FieldDescriptor::rationals();
  if (m[2].matched) {
    base = FieldDescriptor::cyclotomic(Integer(m[2].str()));
  } else if (m[3].matched) {
    Integer p(m[3].str());
    base = m[5].matched ? FieldDescriptor::finite_field(p, static_cast<unsigned>(std::stoul(m[5].str())))
                        : FieldDescriptor::prime_field(p);
  }
  if (!m[7].matched) return base;
  std::vector<std::string> vars;
  std::string list = m[7].str();
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    std::string v = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    v.erase(0, v.find_first_not_of(' '));
    v.erase(v.find_last_not_of(' ') + 1);
    vars.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return FieldDescriptor::function_field(base, vars);
}

} // namespace

std::size_t closure_cap(const Options &opts, std::size_t fallback) {
  if (opts.cap) return *opts.cap;
  const char *env = std::getenv(closure_cap_env);
  if (!env || !*env) return fallback;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
    fail(ErrorCode::SchemaError, std::string(closure_cap_env) + " must be a positive decimal integer");
  auto v = std::stoull(s);
  if (v == 0) fail(ErrorCode::SchemaError, std::string(closure_cap_env) + " must be positive");
  return static_cast<std::size_t>(v);
}

Json error_json(const Error &e) {
  return Json{{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
}

Json parse_payload(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    fail(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
}

Integer read_integer(const Json &j, const std::string &path) {
  std::string s = text_of(j, path);
  static const std::regex re(R"(^\s*([-+]?)(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) schema(path, "expected an integer, got '" + s + "'");
  Integer v(m[2].str());
  return m[1].str() == "-" ? Integer(-v) : v;
}

long read_long(const Json &j, const std::string &path) {
  Integer v = read_integer(j, path);
  if (!v.fits_slong_p()) schema(path, "value out of range");
  return v.get_si();
}

Rational read_rational(const Json &j, const std::string &path) {
  std::string s = text_of(j, path);
  static const std::regex re(R"(^\s*([-+]?\d+)\s*(/\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) schema(path, "expected a fraction 'num/den', got '" + s + "'");
  Integer num = read_integer(Json(m[1].str()), path);
  Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
  if (den == 0) schema(path, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FieldDescriptor read_field(const Json &j, const std::string &path) {
  if (j.is_string()) return at_path(path, [&] { return parse_field_text(j.get<std::string>(), path); });
  if (!j.is_object()) schema(path, "expected a field name or object");
  std::string kind = member(j, "kind", path).is_string() ? member(j, "kind", path).get<std::string>() : "";
  return at_path(path, [&]() -> FieldDescriptor {
    if (kind == "rationals") return FieldDescriptor::rationals();
    if (kind == "cyclotomic") return FieldDescriptor::cyclotomic(read_integer(member(j, "n", path), path + ".n"));
    if (kind == "prime_field") return FieldDescriptor::prime_field(read_integer(member(j, "p", path), path + ".p"));
    if (kind == "finite_field") {
      long m = read_long(member(j, "m", path), path + ".m");
      if (m < 1) schema(path + ".m", "extension degree must be positive");
      return FieldDescriptor::finite_field(read_integer(member(j, "p", path), path + ".p"), static_cast<unsigned>(m));
    }
    if (kind == "function_field") {
      FieldDescriptor base = read_field(member(j, "base", path), path + ".base");
      const Json &vars = member(j, "variables", path);
      if (!vars.is_array()) schema(path + ".variables", "expected a list of names");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!vars[i].is_string()) schema(path + ".variables[" + std::to_string(i) + "]", "expected a name");
        names.push_back(vars[i].get<std::string>());
      }
      return FieldDescriptor::function_field(base, names);
    }
    schema(path + ".kind", "unknown field kind '" + kind + "'");
  });
}

FieldElement read_element(const FieldDescriptor &f, const Json &j, const std::string &path) {
  if (j.is_string()) return at_path(path, [&] { return scalars::parse_element(f, j.get<std::string>()); });
  if (j.is_number_integer()) return FieldElement::from_integer(f, Integer(j.dump()));
  if (j.is_object() && j.contains("num")) {
    scalars::Poly num = read_poly(f, j["num"], path + ".num");
    scalars::Poly den = j.contains("den") ? read_poly(f, j["den"], path + ".den")
                                          : scalars::Poly::constant(f.base_field(), f.nvars(), f.base_field()->one());
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, path + ".den: zero denominator");
    return FieldElement::from_polys(f, num, den);
  }
  schema(path, "expected an element expression or {\"num\", \"den\"} coefficient maps");
}

lattice::IntMatrix read_int_matrix(const Json &j, const std::string &path) {
  const Json &rows = j.is_object() ? member(j, "entries", path) : j;
  std::string rpath = j.is_object() ? path + ".entries" : path;
  if (!rows.is_array() || rows.empty()) schema(rpath, "expected a non-empty list of rows");
  std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
  std::vector<Integer> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string ri = rpath + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != c) schema(ri, "rows must be lists of equal length");
    for (std::size_t k = 0; k < c; ++k) entries.push_back(read_integer(rows[i][k], ri + "[" + std::to_string(k) + "]"));
  }
  if (j.is_object()) {
    if (j.contains("rows") && read_long(j["rows"], path + ".rows") != static_cast<long>(rows.size()))
      schema(path + ".rows", "does not match the entries");
    if (j.contains("cols") && read_long(j["cols"], path + ".cols") != static_cast<long>(c))
      schema(path + ".cols", "does not match the entries");
  }
  return lattice::IntMatrix(rows.size(), c, std::move(entries));
}

FMatrix read_matrix(const FieldDescriptor &f, const Json &j, const std::string &path) {
  const Json &rows = j.is_object() ? member(j, "entries", path) : j;
  std::string rpath = j.is_object() ? path + ".entries" : path;
  if (!rows.is_array() || rows.empty()) schema(rpath, "expected a non-empty list of rows");
  std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
  std::vector<FieldElement> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string ri = rpath + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != c) schema(ri, "rows must be lists of equal length");
    for (std::size_t k = 0; k < c; ++k) entries.push_back(read_element(f, rows[i][k], ri + "[" + std::to_string(k) + "]"));
  }
  return FMatrix(f, rows.size(), c, std::move(entries));
}

pairing::AlternatingPairing read_pairing(const Json &j) {
  const Json &inv = member(j, "invariant_factors", "$");
  if (!inv.is_array()) schema("$.invariant_factors", "expected a list");
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < inv.size(); ++i)
    factors.push_back(read_integer(inv[i], "$.invariant_factors[" + std::to_string(i) + "]"));
  auto group = at_path("$.invariant_factors", [&] { return pairing::FiniteAbelianGroup::invariant(factors); });
  const Json &gram = member(j, "gram", "$");
  if (!gram.is_array() || gram.size() != factors.size()) schema("$.gram", "expected one row per invariant factor");
  std::vector<std::vector<Rational>> g;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    std::string ri = "$.gram[" + std::to_string(i) + "]";
    if (!gram[i].is_array() || gram[i].size() != factors.size()) schema(ri, "expected one entry per invariant factor");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < gram[i].size(); ++k) row.push_back(read_rational(gram[i][k], ri + "[" + std::to_string(k) + "]"));
    g.push_back(std::move(row));
  }
  return pairing::make_pairing(std::move(group), std::move(g));
}

quadform::QuadraticForm read_form(const Json &j) {
  FieldDescriptor f = read_field(member(j, "field", "$"), "$.field");
  long n = read_long(member(j, "dim", "$"), "$.dim");
  if (n < 1 || n > 64) schema("$.dim", "dimension must be in 1..64");
  const Json &coeffs = member(j, "coeffs", "$");
  if (!coeffs.is_object()) schema("$.coeffs", "expected an object keyed by \"i,j\"");
  FMatrix q(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (const auto &[key, value] : coeffs.items()) {
    std::string p = "$.coeffs[\"" + key + "\"]";
    auto idx = parse_index_key(key, p);
    if (idx.size() != 2 || idx[0] < 1 || idx[1] < 1 || idx[0] > static_cast<std::size_t>(n) ||
        idx[1] > static_cast<std::size_t>(n))
      schema(p, "indices must be 1-based pairs within the dimension");
    std::size_t a = std::min(idx[0], idx[1]) - 1, b = std::max(idx[0], idx[1]) - 1;
    q(a, b) = q(a, b) + read_element(f, value, p);
  }
  return quadform::QuadraticForm(q);
}

torus::TorusModel read_torus(const Json &j, std::size_t cap) {
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  if (j.is_object() && j.contains("norm_quotient")) {
    const Json &g = j["norm_quotient"];
    std::string type = member(g, "type", "$.norm_quotient").is_string() ? g["type"].get<std::string>() : "";
    auto size = [&](const char *key) {
      long m = read_long(member(g, key, "$.norm_quotient"), std::string("$.norm_quotient.") + key);
      if (m < 1 || m > 64) schema(std::string("$.norm_quotient.") + key, "must be in 1..64");
      return static_cast<std::size_t>(m);
    };
    torus::MultiplicationTable table;
    if (type == "cyclic") table = torus::cyclic_table(size("m"));
    else if (type == "dihedral") table = torus::dihedral_table(size("m"));
    else if (type == "symmetric") {
      std::size_t k = size("k");
      if (k > 5) schema("$.norm_quotient.k", "symmetric groups up to S_5 only");
      table = torus::symmetric_table(k);
    } else if (type == "quaternion") table = torus::quaternion_table();
    else schema("$.norm_quotient.type", "expected cyclic, dihedral, symmetric or quaternion");
    return torus::norm_quotient_torus_from_table(table, label.empty() ? type : label);
  }
  long rank = read_long(member(j, "rank", "$"), "$.rank");
  if (rank < 1 || rank > 32) schema("$.rank", "rank must be in 1..32");
  const Json &gens = member(j, "theta_generators", "$");
  if (!gens.is_array()) schema("$.theta_generators", "expected a list of matrices");
  std::vector<lattice::IntMatrix> mats;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string p = "$.theta_generators[" + std::to_string(i) + "]";
    auto m = read_int_matrix(gens[i], p);
    if (m.rows() != static_cast<std::size_t>(rank) || m.cols() != static_cast<std::size_t>(rank))
      schema(p, "generators must be rank x rank");
    mats.push_back(std::move(m));
  }
  return torus::TorusModel::make(static_cast<std::size_t>(rank), std::move(mats), label, cap);
}

Json to_json(const Integer &x) { return x.get_str(); }

Json to_json(const Rational &x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_num().get_str() + "/" + x.get_den().get_str();
}

Json to_json(const std::vector<Integer> &v) {
  Json out = Json::array();
  for (const auto &x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const lattice::IntMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return Json{{"rows", std::to_string(m.rows())}, {"cols", std::to_string(m.cols())}, {"entries", rows}};
}

Json to_json(const lattice::AbelianGroupStructure &g) {
  return Json{{"invariant_factors", to_json(g.invariant_factors)},
              {"free_rank", std::to_string(g.free_rank)},
              {"order", to_json(g.order())},
              {"exponent", to_json(g.exponent())}};
}

Json to_json(const FieldElement &x) { return x.to_string(); }

Json to_json(const FMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const std::vector<FieldElement> &v) {
  Json out = Json::array();
  for (const auto &x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const quadform::QuadraticForm &q) {
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t k = i; k < q.dim(); ++k)
      if (!q.coeff(i, k).is_zero()) coeffs[std::to_string(i + 1) + "," + std::to_string(k + 1)] = to_json(q.coeff(i, k));
  return Json{{"field", q.field().to_string()},
              {"dim", std::to_string(q.dim())},
              {"coeffs", coeffs},
              {"polynomial", q.to_string()}};
}

} // namespace aniso::cli
