#include "aniso/bounds.hpp"
#include "aniso/csa.hpp"
#include "internal.hpp"

#include <random>

namespace aniso::cli {

using scalars::FieldDescriptor;
using scalars::FieldElement;
using scalars::FMatrix;

namespace {

[[noreturn]] void schema(const std::string &path, const std::string &what) {
  fail(ErrorCode::SchemaError, path + ": " + what);
}

void require_object(const Json &j) {
  if (!j.is_object()) schema("$", "payload must be a JSON object");
}

std::optional<long> opt_long(const Json &j, const char *key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return read_long(j[key], std::string("$.") + key);
}

long need_long(const Json &j, const char *key) {
  auto v = opt_long(j, key);
  if (!v) schema(std::string("$.") + key, "missing field");
  return *v;
}

std::string need_string(const Json &j, const char *key) {
  if (!j.contains(key)) schema(std::string("$.") + key, "missing field");
  if (!j[key].is_string()) schema(std::string("$.") + key, "expected a string");
  return j[key].get<std::string>();
}

Json element_json(const pairing::Element &e) { return to_json(e); }

// ---------------------------------------------------------------- bounds

Json run_bounds(const Json &j, const Options &opts) {
  require_object(j);
  std::string kind = need_string(j, "kind");
  if (kind == "minkowski") {
    long n = need_long(j, "n");
    auto mv = bounds::minkowski_values(n);
    return Json{{"kind", kind},
                {"n", std::to_string(n)},
                {"upsilon_a", mv.upsilon_a ? to_json(*mv.upsilon_a) : Json("table exhausted")},
                {"upsilon_m", to_json(mv.upsilon_m)}};
  }
  if (kind == "torsion_primes") {
    if (!j.contains("types") || !j["types"].is_array()) schema("$.types", "expected a list of Dynkin types");
    std::vector<std::pair<char, long>> types;
    for (std::size_t i = 0; i < j["types"].size(); ++i) {
      if (!j["types"][i].is_string()) schema("$.types[" + std::to_string(i) + "]", "expected a type such as \"E8\"");
      types.push_back(bounds::parse_dynkin(j["types"][i].get<std::string>()));
    }
    Json primes = Json::array();
    for (long p : bounds::torsion_primes(types)) primes.push_back(std::to_string(p));
    return Json{{"kind", kind}, {"torsion_primes", primes}};
  }
  if (kind == "burnside") {
    if (!j.contains("field")) schema("$.field", "missing field");
    FieldDescriptor f = read_field(j["field"], "$.field");
    if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
      schema("$.generators", "expected a non-empty list of matrices");
    std::vector<FMatrix> gens;
    for (std::size_t i = 0; i < j["generators"].size(); ++i)
      gens.push_back(read_matrix(f, j["generators"][i], "$.generators[" + std::to_string(i) + "]"));
    if (!j.contains("d")) schema("$.d", "missing field");
    Integer d = read_integer(j["d"], "$.d");
    auto group = bounds::FiniteMatrixGroup::generated_by(gens, closure_cap(opts, 100000));
    auto r = bounds::burnside_divisibility_check(group, d);
    Json out{{"kind", kind},
             {"order", to_json(r.order)},
             {"order_prime", to_json(r.order_prime)},
             {"dimension", std::to_string(r.dimension)},
             {"d", to_json(r.d)},
             {"element_orders", to_json(r.element_orders)},
             {"hypothesis_holds", r.hypothesis_holds},
             {"violations", std::to_string(r.violations)},
             {"bound", to_json(r.bound)},
             {"conclusion_holds", r.conclusion_holds}};
    if (!r.hypothesis_holds)
      out["hypothesis_error"] = {{"code", std::string(error_code_name(ErrorCode::HypothesisFails))},
                                 {"message", std::to_string(r.violations) + " element(s) of order prime to the "
                                                                             "characteristic violate g^d = 1"}};
    return out;
  }
  auto bk = bounds::parse_bound_kind(kind);
  if (!bk) schema("$.kind", "unknown bound kind '" + kind + "'");
  bounds::BoundQuery q{*bk, opt_long(j, "n"), opt_long(j, "r"), opt_long(j, "N"), opt_long(j, "p"), std::nullopt};
  if (j.contains("pi1_order") && !j["pi1_order"].is_null()) q.pi1_order = read_integer(j["pi1_order"], "$.pi1_order");
  auto r = bounds::bound_calculator(q);
  Json out{{"kind", kind}, {"divisor_bound", to_json(r.divisor_bound)}};
  if (r.exponent_bound) out["exponent_bound"] = to_json(*r.exponent_bound);
  out["meaning"] = r.meaning;
  return out;
}

// ---------------------------------------------------------------- torus

Json run_torus(const std::string &sub, const Json &j, const Options &opts) {
  if (sub != "analyze") schema("command", "unknown torus subcommand '" + sub + "'");
  require_object(j);
  auto t = read_torus(j, closure_cap(opts, 10000));
  Integer characteristic = j.contains("characteristic") ? read_integer(j["characteristic"], "$.characteristic") : 0;
  if (characteristic < 0) schema("$.characteristic", "must be non-negative");
  std::vector<Integer> ds;
  if (j.contains("d")) {
    if (!j["d"].is_array()) schema("$.d", "expected a list of moduli");
    for (std::size_t i = 0; i < j["d"].size(); ++i) ds.push_back(read_integer(j["d"][i], "$.d[" + std::to_string(i) + "]"));
  } else {
    Integer range = j.contains("d_range") ? read_integer(j["d_range"], "$.d_range") : 20;
    if (range > 1000) schema("$.d_range", "at most 1000");
    for (Integer d = 2; d <= range; ++d)
      if (characteristic == 0 || !divides(characteristic, d)) ds.push_back(d);
  }
  return detail::torus_analysis(t, ds, characteristic);
}

// ---------------------------------------------------------------- pairing

Json run_pairing(const std::string &sub, const Json &j, const Options &opts) {
  require_object(j);
  auto p = read_pairing(j);
  if (sub == "validate") {
    auto d = pairing::validate_pairing(p);
    return Json{{"valid", d.valid}, {"reason", d.reason}};
  }
  if (sub != "isotropic") schema("command", "unknown pairing subcommand '" + sub + "'");
  auto lambda = pairing::isotropic_subgroup(p);
  Json gens = Json::array();
  for (const auto &g : lambda.generators) gens.push_back(element_json(g));
  Integer gamma = p.group.order();
  Json out{{"group_order", to_json(gamma)},
           {"lambda", {{"generators", gens}, {"order", to_json(lambda.order)}}},
           {"isotropic", pairing::is_isotropic(p, lambda.generators)},
           {"group_order_divides_lambda_squared", divides(gamma, lambda.order * lambda.order)}};
  if (j.contains("brute_force") && j["brute_force"].is_boolean() && j["brute_force"].get<bool>()) {
    auto bf = pairing::brute_force_isotropic_max(p, Integer(static_cast<unsigned long>(closure_cap(opts, 4096))));
    out["brute_force"] = {{"max_order", to_json(bf.max_order)}, {"subgroups_visited", std::to_string(bf.subgroups_visited)}};
  }
  return out;
}

// ---------------------------------------------------------------- csa

csa::SpecPtr read_algebra(const Json &j) {
  if (!j.is_object()) schema("$.algebra", "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) schema("$.algebra.kind", "expected \"symbol\" or \"weyl\"");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "weyl") {
    if (!j.contains("p")) schema("$.algebra.p", "missing field");
    return csa::weyl_mod_p(read_long(j["p"], "$.algebra.p"));
  }
  if (kind != "symbol") schema("$.algebra.kind", "expected \"symbol\" or \"weyl\"");
  for (const char *k : {"field", "n", "a", "b"})
    if (!j.contains(k)) schema(std::string("$.algebra.") + k, "missing field");
  FieldDescriptor f = read_field(j["field"], "$.algebra.field");
  long n = read_long(j["n"], "$.algebra.n");
  if (n < 2 || n > 16) schema("$.algebra.n", "degree must be in 2..16");
  return csa::symbol_algebra(f, n, read_element(f, j["a"], "$.algebra.a"), read_element(f, j["b"], "$.algebra.b"));
}

csa::AlgebraElement read_algebra_element(const csa::SpecPtr &spec, const Json &j, const std::string &path) {
  if (!j.is_object()) schema(path, "expected an object keyed by \"i,j\"");
  csa::AlgebraElement x(spec);
  for (const auto &[key, value] : j.items()) {
    std::string p = path + "[\"" + key + "\"]";
    auto comma = key.find(',');
    long i = -1, k = -1;
    if (comma != std::string::npos) {
      try {
        std::size_t used = 0;
        i = std::stol(key.substr(0, comma), &used);
        if (used != comma) i = -1;
        std::string rest = key.substr(comma + 1);
        k = std::stol(rest, &used);
        if (used != rest.size()) k = -1;
      } catch (const std::exception &) {
        i = k = -1;
      }
    }
    if (i < 0 || k < 0 || i >= spec->n || k >= spec->n)
      schema(p, "keys are exponent pairs \"i,j\" with 0 <= i, j < " + std::to_string(spec->n));
    x.coeff(i, k) = x.coeff(i, k) + read_element(spec->base, value, p);
  }
  return x;
}

scalars::UPoly read_upoly(long p, const Json &j, const std::string &path) {
  FieldDescriptor f = FieldDescriptor::prime_field(p);
  if (!j.is_array()) schema(path, "expected coefficients from low to high degree");
  std::vector<FieldElement> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(read_element(f, j[i], path + "[" + std::to_string(i) + "]"));
  return scalars::UPoly(f, c);
}

Json run_csa(const std::string &sub, const Json &j, const Options &) {
  require_object(j);
  if (sub == "verify-weyl") {
    long p = need_long(j, "p");
    auto c = csa::weyl_split_verification(p);
    return Json{{"p", std::to_string(p)},
                {"field", c.field.to_string()},
                {"u_prime", to_json(c.u_prime)},
                {"v_prime", to_json(c.v_prime)},
                {"u", to_json(c.u)},
                {"v", to_json(c.v)},
                {"u_prime_nilpotent", c.u_prime_nilpotent},
                {"v_prime_nilpotent", c.v_prime_nilpotent},
                {"u_prime_strictly_lower", c.u_prime_strictly_lower},
                {"commutator_identity", c.commutator_identity},
                {"u_power_is_y", c.u_power_is_y},
                {"v_power_is_x", c.v_power_is_x},
                {"monomial_rank", std::to_string(c.monomial_rank)},
                {"all_ok", c.all_ok()}};
  }
  if (sub == "torsion") {
    long p = need_long(j, "p");
    std::vector<scalars::UPoly> gens;
    if (j.contains("irreducible")) {
      long m = read_long(j["irreducible"], "$.irreducible");
      if (m < 1 || m > 16) schema("$.irreducible", "count must be in 1..16");
      if (p < 2 || p > 97) schema("$.p", "prime must be in 2..97");
      gens = csa::irreducible_polynomials(p, static_cast<std::size_t>(m));
    } else {
      if (!j.contains("generators") || !j["generators"].is_array()) schema("$.generators", "expected a list of polynomials");
      for (std::size_t i = 0; i < j["generators"].size(); ++i)
        gens.push_back(read_upoly(p, j["generators"][i], "$.generators[" + std::to_string(i) + "]"));
    }
    auto r = csa::inseparable_torsion_subgroup(p, gens);
    Json g = Json::array(), orders = Json::array();
    for (const auto &f : r.generators) g.push_back(f.to_string("v"));
    for (long o : r.class_orders) orders.push_back(std::to_string(o));
    return Json{{"p", std::to_string(p)},  {"generators", g},
                {"class_orders", orders},  {"commute", r.commute},
                {"rank", std::to_string(r.rank)}, {"order", to_json(r.order)},
                {"elementary_abelian", r.elementary_abelian}};
  }
  if (sub != "norm") schema("command", "unknown csa subcommand '" + sub + "'");
  if (!j.contains("algebra")) schema("$.algebra", "missing field");
  auto spec = read_algebra(j["algebra"]);
  if (!j.contains("element")) schema("$.element", "missing field");
  auto x = read_algebra_element(spec, j["element"], "$.element");
  Json out{{"algebra", spec->to_string()}, {"element", x.to_string()}, {"reduced_norm", to_json(csa::reduced_norm(x))}};
  out["invertible"] = csa::is_invertible(x);
  if (out["invertible"].get<bool>()) {
    auto cls = csa::norm_residue_class(x);
    out["norm_class"] = {{"representative", to_json(cls.representative)},
                         {"fully_normalized", cls.fully_normalized},
                         {"trivial", cls.trivial ? Json(*cls.trivial) : Json(nullptr)}};
    auto ord = csa::finite_order_in_projective_units(x);
    out["projective_order"] = ord.order ? Json(std::to_string(*ord.order)) : Json(nullptr);
  }
  return out;
}

// ---------------------------------------------------------------- quad

Json run_quad(const std::string &sub, const Json &j, const Options &opts) {
  require_object(j);
  if (sub == "pfister") {
    long k = j.contains("k") ? read_long(j["k"], "$.k") : 3;
    long samples = j.contains("samples") ? read_long(j["samples"], "$.samples") : 100;
    long deg = j.contains("max_degree") ? read_long(j["max_degree"], "$.max_degree") : 3;
    if (k < 2 || k > 5) fail(ErrorCode::KTooLarge, "k must be in 2..5, got " + std::to_string(k));
    if (samples < 0 || samples > 100000) schema("$.samples", "must be in 0..100000");
    if (deg < 0 || deg > 8) schema("$.max_degree", "must be in 0..8");
    auto s = detail::pfister_summary(static_cast<unsigned>(k), static_cast<std::size_t>(samples),
                                     static_cast<unsigned>(deg), opts.seed);
    s.report["all_ok"] = s.failures.empty();
    return s.report;
  }
  auto q = read_form(j);
  if (sub == "arf") {
    auto r = quadform::arf_normal_form(q);
    Json out{{"form", to_json(q)},
             {"arf_invariant", to_json(r.a)},
             {"normal_form", to_json(r.normal_form)},
             {"change", to_json(r.change)},
             {"isotropic_vector", r.isotropic_vector ? to_json(*r.isotropic_vector) : Json(nullptr)}};
    if (j.contains("compare_with"))
      out["same_class"] = quadform::arf_invariant_class(r.a, read_element(q.field(), j["compare_with"], "$.compare_with"));
    return out;
  }
  if (sub == "extract-isotropic") {
    if (!j.contains("g")) schema("$.g", "missing field");
    FMatrix g = read_matrix(q.field(), j["g"], "$.g");
    if (g.rows() != q.dim() || g.cols() != q.dim()) schema("$.g", "must be dim x dim");
    auto w = quadform::extract_isotropic_from_order_p(g, q);
    bool fixed = g.apply(w.v1) == w.v1;
    return Json{{"v1", to_json(w.v1)},
                {"v2", to_json(w.v2)},
                {"q_v1", to_json(w.q_v1)},
                {"verified", w.q_v1.is_zero() && q.evaluate(w.v1).is_zero() && fixed}};
  }
  schema("command", "unknown quad subcommand '" + sub + "'");
}

} // namespace

Json dispatch(const std::vector<std::string> &command, const Json &payload, const Options &opts) {
  if (command.empty()) schema("command", "no subcommand given");
  const std::string &top = command[0];
  std::string sub = command.size() > 1 ? command[1] : "";
  if (command.size() > 2) schema("command", "too many subcommand words");
  if (top == "bounds") return run_bounds(payload, opts);
  if (top == "torus") return run_torus(sub, payload, opts);
  if (top == "pairing") return run_pairing(sub, payload, opts);
  if (top == "csa") return run_csa(sub, payload, opts);
  if (top == "quad") return run_quad(sub, payload, opts);
  if (top == "replay") {
    std::vector<std::string> ids;
    if (payload.is_object() && payload.contains("ids")) {
      if (!payload["ids"].is_array()) schema("$.ids", "expected a list of example ids");
      for (std::size_t i = 0; i < payload["ids"].size(); ++i) {
        if (!payload["ids"][i].is_string()) schema("$.ids[" + std::to_string(i) + "]", "expected a string");
        ids.push_back(payload["ids"][i].get<std::string>());
      }
    }
    return replay_report(run_replay(ids, opts));
  }
  schema("command", "unknown subcommand '" + top + "'");
}

namespace detail {

Json torus_analysis(const torus::TorusModel &t, const std::vector<Integer> &ds, const Integer &characteristic) {
  Json reports = Json::array();
  bool all = true;
  for (const auto &d : ds) {
    auto r = torus::torsion_points(t, d, characteristic);
    Json w = Json::array();
    for (const auto &v : r.witnesses) w.push_back(to_json(v));
    reports.push_back(Json{{"d", to_json(r.d)}, {"group", to_json(r.group)}, {"witnesses", w}, {"divisibility_check", r.divisibility_check}});
    all = all && r.divisibility_check;
  }
  Json gens = Json::array();
  for (const auto &g : t.theta_generators) gens.push_back(to_json(g));
  Json out{{"label", t.label},
           {"rank", std::to_string(t.rank)},
           {"theta_generators", gens},
           {"theta_order", to_json(t.theta_order())},
           {"anisotropic", torus::is_anisotropic(t)},
           {"reports", reports},
           {"all_exponents_divide_theta_order", all}};
  return out;
}

Checked pfister_summary(unsigned k, std::size_t samples, unsigned max_degree, std::uint64_t seed) {
  Checked c;
  auto note = [&](bool ok, const std::string &name) {
    if (!ok) c.failures.push_back(name);
    return ok;
  };
  auto pf = quadform::pfister_build(k);
  const FMatrix &tau = pf.tau;
  const FMatrix &sigma = *pf.sigma;
  unsigned full = (1u << k) - 1;
  FieldElement a_full = quadform::pfister_coefficient(pf.field, full);
  std::size_t n = pf.form.dim();
  bool sigma_sq = note((sigma * sigma).scalar_value().has_value(), "sigma^2 = 1");
  bool tau_sq = note((tau * tau).scalar_value().has_value(), "tau^2 = 1");
  bool noncommuting = note((sigma * tau).projective_normalized() != (tau * sigma).projective_normalized(),
                           "sigma tau != tau sigma");
  bool identity = note(pf.form.compose(tau) == pf.form.scale(a_full) && pf.lambda_tau == a_full, "q o tau = a_full q");
  bool sigma_isometry = note(pf.form.compose(sigma) == pf.form, "q o sigma = q");

  auto group = quadform::pfister_group_closure(k);
  Json orders = Json::array();
  for (long o : group.orders) orders.push_back(std::to_string(o));
  note(group.iota_nontrivial, "iota != 1");
  note(group.iota_involution, "iota^2 = 1");
  note(group.order_divides_bound, "|G| divides 8^(n-1)");
  note(group.orders_in_1_2_4, "projective orders in {1,2,4}");
  if (k >= 3) note(group.non_abelian && group.elements.size() == 8, "closure non-abelian of order 8");

  std::mt19937_64 rng(seed);
  std::size_t refuted = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto cand = quadform::random_pfister_candidate(k, max_degree, rng);
    auto trace = quadform::pfister_refute_point(k, cand);
    if (!trace.value.is_zero()) ++refuted;
  }
  note(refuted == samples, "every random candidate refuted");

  c.report = Json{{"k", std::to_string(k)},
                  {"dim", std::to_string(n)},
                  {"field", pf.field.to_string()},
                  {"form", pf.form.to_string()},
                  {"lambda_tau", to_json(pf.lambda_tau)},
                  {"a_full", to_json(a_full)},
                  {"sigma_squared_identity", sigma_sq},
                  {"tau_squared_identity", tau_sq},
                  {"sigma_tau_noncommuting", noncommuting},
                  {"tau_scales_form", identity},
                  {"sigma_isometry", sigma_isometry},
                  {"group",
                   {{"order", std::to_string(group.elements.size())},
                    {"non_abelian", group.non_abelian},
                    {"element_orders", orders},
                    {"iota_nontrivial", group.iota_nontrivial},
                    {"iota_involution", group.iota_involution},
                    {"order_divides_bound", group.order_divides_bound},
                    {"orders_in_1_2_4", group.orders_in_1_2_4}}},
                  {"refutations",
                   {{"seed", std::to_string(seed)},
                    {"samples", std::to_string(samples)},
                    {"max_degree", std::to_string(max_degree)},
                    {"refuted", std::to_string(refuted)}}}};
  return c;
}

Checked weyl_summary(long p, std::size_t max_m) {
  Checked c;
  auto cert = csa::weyl_split_verification(p);
  if (!cert.all_ok()) c.failures.push_back("Weyl split certificate for p = " + std::to_string(p));
  Json subgroups = Json::array();
  for (std::size_t m = 1; m <= max_m; ++m) {
    auto rep = csa::inseparable_torsion_subgroup(p, csa::irreducible_polynomials(p, m));
    Integer expected = pow(Integer(p), static_cast<unsigned long>(m));
    bool ok = rep.order == expected && rep.commute && rep.elementary_abelian;
    if (!ok) c.failures.push_back("subgroup of order " + std::to_string(p) + "^" + std::to_string(m));
    subgroups.push_back(Json{{"m", std::to_string(m)}, {"order", to_json(rep.order)}, {"elementary_abelian", rep.elementary_abelian}});
  }
  c.report = Json{{"p", std::to_string(p)},
                  {"certificate_ok", cert.all_ok()},
                  {"monomial_rank", std::to_string(cert.monomial_rank)},
                  {"subgroups", subgroups}};
  return c;
}

} // namespace detail

} // namespace aniso::cli
