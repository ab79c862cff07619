#include "aniso/bounds.hpp"
#include "internal.hpp"

#include <functional>

namespace aniso::cli {

namespace {

using Runner = std::function<void(ReplayEntry &, const Options &)>;

struct Registered {
  std::string id;
  std::string expected;
  Runner run;
};

void check(ReplayEntry &e, bool ok, const std::string &what) {
  if (!ok) e.diagnostics.push_back("failed: " + what);
}

void minkowski_table(ReplayEntry &e, const Options &) {
  struct Row {
    long n;
    long a, m;
  };
  Json rows = Json::array();
  for (Row r : {Row{1, 2, 2}, Row{2, 12, 24}, Row{3, 48, 48}}) {
    auto mv = bounds::minkowski_values(r.n);
    check(e, mv.upsilon_a && *mv.upsilon_a == r.a, "Upsilon_A(" + std::to_string(r.n) + ") = " + std::to_string(r.a));
    check(e, mv.upsilon_m == r.m, "Upsilon_M(" + std::to_string(r.n) + ") = " + std::to_string(r.m));
    rows.push_back(Json{{"n", std::to_string(r.n)},
                        {"upsilon_a", mv.upsilon_a ? to_json(*mv.upsilon_a) : Json(nullptr)},
                        {"upsilon_m", to_json(mv.upsilon_m)}});
  }
  e.parameters = Json{{"n", {"1", "2", "3"}}, {"computed", rows}};
}

// Rank-one torus other than G_m: every finite subgroup has order 2, and none in characteristic 2.
void example_2_5(ReplayEntry &e, const Options &) {
  auto t = torus::TorusModel::make(1, {lattice::IntMatrix::from_rows({{-1}})}, "rank-1 nonsplit");
  check(e, torus::is_anisotropic(t), "Theta = <-I> is anisotropic");
  auto two = torus::torsion_points(t, 2);
  check(e, two.group.invariant_factors == std::vector<Integer>{2}, "2-torsion is Z/2");
  auto cert = torus::averaging_certificate(t, 2, {1});
  check(e, cert.w_is_zero && cert.d_divides_theta_order, "averaging certificate for d = 2");
  auto rep = torus::exponent_bound_check(t, 20);
  bool small = true;
  for (const auto &row : rep.rows) small = small && (row.group.exponent() == 1 || row.group.exponent() == 2);
  check(e, rep.all_ok && small, "exponents in {1, 2} for d <= 20");
  auto char2 = torus::exponent_bound_check(t, 20, 2);
  bool trivial = true;
  for (const auto &row : char2.rows) trivial = trivial && row.group.is_trivial();
  check(e, trivial, "no nontrivial torsion coprime to characteristic 2");
  e.parameters = Json{{"theta", "<-I>"}, {"d_range", "20"}, {"characteristics", {"0", "2"}}};
}

// R_{L/K} G_m / G_m: finite subgroups have order dividing |Gal(L/K)|.
void example_2_6(ReplayEntry &e, const Options &) {
  struct G {
    std::string name;
    torus::MultiplicationTable table;
  };
  std::vector<G> groups{{"Z/2", torus::cyclic_table(2)},
                        {"Z/3", torus::cyclic_table(3)},
                        {"Z/4", torus::cyclic_table(4)},
                        {"S_3", torus::symmetric_table(3)}};
  Json names = Json::array();
  for (const auto &g : groups) {
    auto t = torus::norm_quotient_torus_from_table(g.table, g.name);
    names.push_back(g.name);
    check(e, t.rank == g.table.size() - 1, g.name + ": rank |G| - 1");
    check(e, torus::is_anisotropic(t), g.name + ": anisotropic");
    auto rep = torus::exponent_bound_check(t, 30);
    check(e, rep.all_ok, g.name + ": exponents divide |Theta| and |G| for d <= 30");
  }
  e.parameters = Json{{"groups", names}, {"d_range", "30"}};
}

// Weyl algebra mod p: split after base change, yet unbounded elementary abelian p-subgroups.
void example_4_8(ReplayEntry &e, const Options &) {
  Json primes = Json::array();
  for (long p : {2L, 3L, 5L}) {
    auto s = detail::weyl_summary(p, 4);
    for (const auto &f : s.failures) check(e, false, f);
    primes.push_back(std::to_string(p));
  }
  e.parameters = Json{{"p", primes}, {"subgroup_ranks", {"1", "2", "3", "4"}}};
}

// Pfister quadric in P^7 with the non-abelian group <sigma, tau>.
void example_5_4(ReplayEntry &e, const Options &opts) {
  auto s = detail::pfister_summary(3, 100, 3, opts.seed);
  for (const auto &f : s.failures) check(e, false, f);
  e.parameters = Json{{"k", "3"}, {"samples", "100"}, {"max_degree", "3"}, {"seed", std::to_string(opts.seed)}};
}

const std::vector<Registered> &registry() {
  static const std::vector<Registered> r{
      {"minkowski-table", "Upsilon_A(1) = Upsilon_M(1) = 2, Upsilon_A(2) = 12, Upsilon_M(2) = 24, Upsilon_A(3) = Upsilon_M(3) = 48",
       minkowski_table},
      {"example-2.5", "nonsplit rank-1 torus: finite subgroups have order 2; none in characteristic 2", example_2_5},
      {"example-2.6", "norm-quotient tori for Z/2, Z/3, Z/4, S_3: torsion exponent divides |G|", example_2_6},
      {"example-4.8", "Weyl algebra mod p splits over the algebraic closure; elementary abelian p-subgroups of order p^m",
       example_4_8},
      {"example-5.4", "Pfister quadric k = 3: sigma, tau non-commuting involutions, q o tau = a_123 q, group of order 8, "
                      "no rational points",
       example_5_4},
  };
  return r;
}

} // namespace

std::vector<std::string> replay_ids() {
  std::vector<std::string> ids;
  for (const auto &r : registry()) ids.push_back(r.id);
  return ids;
}

std::vector<ReplayEntry> run_replay(const std::vector<std::string> &filter, const Options &opts) {
  for (const auto &id : filter) {
    bool known = false;
    for (const auto &r : registry()) known = known || r.id == id;
    if (!known) fail(ErrorCode::UnknownExampleId, "unknown example id '" + id + "'");
  }
  std::vector<ReplayEntry> out;
  for (const auto &r : registry()) {
    if (!filter.empty() && std::find(filter.begin(), filter.end(), r.id) == filter.end()) continue;
    ReplayEntry e;
    e.id = r.id;
    e.expected = r.expected;
    try {
      r.run(e, opts);
    } catch (const Error &err) {
      e.diagnostics.push_back(std::string(error_code_name(err.code())) + ": " + err.what());
    } catch (const std::exception &err) {
      e.diagnostics.push_back(std::string("exception: ") + err.what());
    }
    e.passed = e.diagnostics.empty();
    out.push_back(std::move(e));
  }
  return out;
}

Json replay_report(const std::vector<ReplayEntry> &entries) {
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto &e : entries) {
    failed += e.passed ? 0 : 1;
    list.push_back(Json{{"id", e.id},
                        {"parameters", e.parameters},
                        {"expected", e.expected},
                        {"status", e.passed ? "pass" : "fail"},
                        {"diagnostics", e.diagnostics}});
  }
  return Json{{"entries", list},
              {"passed", std::to_string(entries.size() - failed)},
              {"failed", std::to_string(failed)}};
}

} // namespace aniso::cli
