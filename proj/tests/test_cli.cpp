#include "aniso/cli.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace aniso;
using namespace aniso::cli;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an aniso::Error");
  return ErrorCode::InternalConsistency;
}

Json run(std::vector<std::string> cmd, const std::string &payload, Options opts = {}) {
  return dispatch(cmd, parse_payload(payload), opts);
}

const char *symplectic4 = R"({"invariant_factors": ["4", "4"], "gram": [["0", "1/4"], ["3/4", "0"]]})";

} // namespace

TEST_CASE("bounds output") {
  auto r = run({"bounds"}, R"({"kind": "quadric_even", "n": "4"})");
  CHECK(r["divisor_bound"] == "512");
  CHECK(run({"bounds"}, R"({"kind": "torus", "n": 2})")["divisor_bound"] == "576");
  auto sb = run({"bounds"}, R"({"kind": "severi_brauer", "n": 5})");
  CHECK(sb["divisor_bound"] == "25");
  CHECK(sb["exponent_bound"] == "5");
  auto mk = run({"bounds"}, R"({"kind": "minkowski", "n": 3})");
  CHECK(mk["upsilon_a"] == "48");
  CHECK(mk["upsilon_m"] == "48");
  CHECK(run({"bounds"}, R"({"kind": "minkowski", "n": 4})")["upsilon_a"] == "table exhausted");
  CHECK(run({"bounds"}, R"({"kind": "torsion_primes", "types": ["E_8"]})")["torsion_primes"] == Json{"2", "3", "5"});
  CHECK(code_of([] { run({"bounds"}, R"({"kind": "torus"})"); }) == ErrorCode::MissingParameter);
  CHECK(code_of([] { run({"bounds"}, R"({"kind": "bogus", "n": 1})"); }) == ErrorCode::SchemaError);
}

TEST_CASE("burnside through the CLI attaches HypothesisFails") {
  auto ok = run({"bounds"}, R"({"kind": "burnside", "field": "Q", "generators": [[[0, -1], [1, -1]], [[0, 1], [1, 0]]], "d": 6})");
  CHECK(ok["order"] == "6");
  CHECK(ok["conclusion_holds"] == true);
  CHECK_FALSE(ok.contains("hypothesis_error"));
  auto bad = run({"bounds"}, R"({"kind": "burnside", "field": "Q", "generators": [[[0, -1], [1, -1]]], "d": 2})");
  CHECK(bad["hypothesis_holds"] == false);
  CHECK(bad["hypothesis_error"]["code"] == "HypothesisFails");
}

TEST_CASE("pairing isotropic") {
  auto r = run({"pairing", "isotropic"}, symplectic4);
  CHECK(r["lambda"]["order"] == "4");
  CHECK(r["lambda"]["generators"] == Json::array({Json::array({"1", "0"})}));
  CHECK(r["isotropic"] == true);
  CHECK(r["group_order_divides_lambda_squared"] == true);
  auto bf = dispatch({"pairing", "isotropic"}, [] {
    auto j = parse_payload(symplectic4);
    j["brute_force"] = true;
    return j;
  }(), {});
  CHECK(bf["brute_force"]["max_order"] == "4");
  CHECK(code_of([] { run({"pairing", "isotropic"}, R"({"invariant_factors": ["2"], "gram": [["1/2"]]})"); }) ==
        ErrorCode::InvalidPairing);
}

TEST_CASE("schema errors carry a path") {
  CHECK(code_of([] { parse_payload("{\"invariant_factors\": [4, 4],"); }) == ErrorCode::SchemaError);
  try {
    run({"pairing", "isotropic"}, R"({"invariant_factors": ["4", "4"], "gram": [["0", "x"], ["0", "0"]]})");
    FAIL("no error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    CHECK(std::string(e.what()).find("$.gram[0][1]") != std::string::npos);
  }
  CHECK(code_of([] { run({"quad", "arf"}, R"({"field": "F_2", "dim": 2})"); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { run({"nope"}, "{}"); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { run({"torus", "analyze"}, R"({"rank": 2, "theta_generators": [[[1]]]})"); }) == ErrorCode::SchemaError);
  auto e = error_json(Error(ErrorCode::SchemaError, "m"));
  CHECK(e["error"]["code"] == "SchemaError");
  CHECK(e["error"]["message"] == "m");
}

TEST_CASE("field and element readers") {
  auto f = read_field(Json("Q(zeta_3)(a,b)"), "$");
  CHECK(f == scalars::FieldDescriptor::function_field(scalars::FieldDescriptor::cyclotomic(3), {"a", "b"}));
  CHECK(read_field(Json("F_2^2"), "$") == scalars::FieldDescriptor::finite_field(2, 2));
  CHECK(read_field(parse_payload(R"({"kind": "prime_field", "p": "5"})"), "$") == scalars::FieldDescriptor::prime_field(5));
  auto x = read_element(f, parse_payload(R"({"num": {"2,0": "1", "0,1": "zeta"}, "den": {"0,0": "2"}})"), "$");
  CHECK(x == scalars::parse_element(f, "(a^2 + zeta*b)/2"));
  CHECK(read_rational(Json("-6/4"), "$") == Rational(-3, 2));
  CHECK(read_integer(Json("123456789012345678901234567890"), "$") == Integer("123456789012345678901234567890"));
  CHECK(to_json(Integer("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(code_of([] { read_field(Json("R"), "$"); }) == ErrorCode::SchemaError);
}

TEST_CASE("torus, csa and quad commands") {
  auto t = run({"torus", "analyze"}, R"({"rank": 1, "theta_generators": [[["-1"]]], "d": [2, 7]})");
  CHECK(t["anisotropic"] == true);
  CHECK(t["reports"][0]["group"]["invariant_factors"] == Json{"2"});
  CHECK(t["reports"][1]["group"]["order"] == "1");
  auto s3 = run({"torus", "analyze"}, R"({"norm_quotient": {"type": "symmetric", "k": 3}, "d_range": 12})");
  CHECK(s3["rank"] == "5");
  CHECK(s3["all_exponents_divide_theta_order"] == true);

  auto n = run({"csa", "norm"},
               R"j({"algebra": {"kind": "symbol", "field": "Q(zeta_3)(a,b)", "n": 3, "a": "a", "b": "b"}, "element": {"1,0": "1"}})j");
  CHECK(n["reduced_norm"] == "a");
  CHECK(n["projective_order"] == "3");
  CHECK(run({"csa", "verify-weyl"}, R"({"p": 5})")["all_ok"] == true);
  CHECK(run({"csa", "torsion"}, R"({"p": 2, "irreducible": 4})")["order"] == "16");
  CHECK(code_of([] { run({"csa", "verify-weyl"}, R"({"p": 11})"); }) == ErrorCode::PrimeTooLarge);

  auto arf = run({"quad", "arf"}, R"({"field": "F_2^2", "dim": 2, "coeffs": {"1,1": "1", "1,2": "1", "2,2": "g"}, "compare_with": "g + 1"})");
  CHECK(arf["arf_invariant"] == "g");
  CHECK(arf["same_class"] == true);
  auto split = run({"quad", "arf"}, R"({"field": "F_2^2", "dim": 2, "coeffs": {"1,1": "1", "1,2": "1", "2,2": "g"}, "compare_with": "0"})");
  CHECK(split["same_class"] == false);
  auto iso = run({"quad", "extract-isotropic"},
                 R"({"field": "F_5", "dim": 5, "coeffs": {"1,1": 1, "2,2": 1, "3,3": 1, "4,4": 1, "5,5": 1},
                     "g": [[0,0,0,0,1],[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]})");
  CHECK(iso["verified"] == true);
  auto pf = run({"quad", "pfister"}, R"({"k": 3, "samples": 10})");
  CHECK(pf["all_ok"] == true);
  CHECK(pf["group"]["order"] == "8");
}

TEST_CASE("replay") {
  auto all = run_replay({}, {});
  CHECK(all.size() == replay_ids().size());
  for (const auto &e : all) CHECK_MESSAGE(e.passed, e.id);
  auto one = run_replay({"example-2.5"}, {});
  REQUIRE(one.size() == 1);
  CHECK(one[0].passed);
  CHECK(code_of([] { run_replay({"nonsense"}, {}); }) == ErrorCode::UnknownExampleId);
  CHECK(replay_report(run_replay({}, {})).dump() == replay_report(all).dump());
  Options seeded{5, std::nullopt};
  CHECK(replay_report(run_replay({"example-5.4"}, seeded)).dump() ==
        replay_report(run_replay({"example-5.4"}, seeded)).dump());
}

TEST_CASE("closure caps") {
  Options o;
  ::unsetenv(closure_cap_env);
  CHECK(closure_cap(o, 77) == 77);
  ::setenv(closure_cap_env, "5", 1);
  CHECK(closure_cap(o, 77) == 5);
  CHECK(code_of([] { run({"torus", "analyze"}, R"({"rank": 2, "theta_generators": [[[0, -1], [1, -1]], [[0, 1], [1, 0]]]})"); }) ==
        ErrorCode::ClosureCapExceeded);
  o.cap = 9;
  CHECK(closure_cap(o, 77) == 9);
  ::setenv(closure_cap_env, "lots", 1);
  CHECK(code_of([] { closure_cap(Options{}, 1); }) == ErrorCode::SchemaError);
  ::unsetenv(closure_cap_env);
}
