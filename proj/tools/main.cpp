#include "aniso/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <list>
#include <iostream>
#include <sstream>

using aniso::cli::Json;

namespace {

struct Flags {
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  std::string json_payload;
  std::string input;
  bool compact = false;
};

// Numeric flags land in the payload as decimal strings; unset ones are skipped.
struct PayloadFlags {
  std::list<std::pair<std::string, std::optional<std::string>>> values;
  std::optional<std::string> &add(CLI::App *app, const std::string &flag, const std::string &key, const std::string &help) {
    values.emplace_back(key, std::nullopt);
    auto &slot = values.back().second;
    app->add_option(flag, slot, help);
    return slot;
  }
};

std::string read_all(std::istream &in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json load_payload(const Flags &f) {
  if (!f.json_payload.empty()) return aniso::cli::parse_payload(f.json_payload);
  if (!f.input.empty()) {
    if (f.input == "-") return aniso::cli::parse_payload(read_all(std::cin));
    std::ifstream in(f.input);
    if (!in) aniso::fail(aniso::ErrorCode::SchemaError, "cannot open input file '" + f.input + "'");
    return aniso::cli::parse_payload(read_all(in));
  }
  return Json::object();
}

void emit(const Json &j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << "\n"; }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Finite subgroups of anisotropic groups: exact verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--seed", flags.seed, "Seed for randomized trials")->capture_default_str();
  app.add_option("--cap", flags.cap, "Closure cap (overrides " + std::string(aniso::cli::closure_cap_env) + ")");
  app.add_option("--json", flags.json_payload, "Inline JSON payload");
  app.add_option("--input", flags.input, "Read the JSON payload from a file ('-' for stdin)");
  app.add_flag("--compact", flags.compact, "Single-line JSON output");

  std::vector<std::string> command;
  PayloadFlags pf;
  std::vector<std::string> ids;
  std::vector<std::string> types;

  auto *bounds = app.add_subcommand("bounds", "Divisor bounds, Minkowski values, torsion primes, Burnside check");
  pf.add(bounds, "--kind", "kind", "torus, reductive_perfect, general_lag, semisimple_char_p, severi_brauer, "
                                   "quadric_odd, quadric_even, minkowski, torsion_primes, burnside");
  pf.add(bounds, "--n", "n", "Dimension or degree");
  pf.add(bounds, "--r", "r", "Component group order");
  pf.add(bounds, "--N", "N", "Faithful representation dimension");
  pf.add(bounds, "--p", "p", "Field characteristic");
  pf.add(bounds, "--pi1-order", "pi1_order", "Order of the fundamental group");
  bounds->add_option("--types", types, "Dynkin types for torsion_primes, e.g. E8 B2");
  bounds->callback([&] { command = {"bounds"}; });

  auto *torus = app.add_subcommand("torus", "Algebraic tori");
  torus->require_subcommand(1);
  auto *analyze = torus->add_subcommand("analyze", "Torsion reports for a torus");
  pf.add(analyze, "--d-range", "d_range", "Largest modulus (default 20)");
  pf.add(analyze, "--characteristic", "characteristic", "Scenario characteristic");
  analyze->callback([&] { command = {"torus", "analyze"}; });

  auto *pairing = app.add_subcommand("pairing", "Alternating pairings");
  pairing->require_subcommand(1);
  pairing->add_subcommand("isotropic", "Isotropic subgroup with |G| dividing its square")->callback([&] {
    command = {"pairing", "isotropic"};
  });
  pairing->add_subcommand("validate", "Check the pairing axioms")->callback([&] { command = {"pairing", "validate"}; });

  auto *csa = app.add_subcommand("csa", "Central simple algebras");
  csa->require_subcommand(1);
  csa->add_subcommand("norm", "Reduced norm and norm class")->callback([&] { command = {"csa", "norm"}; });
  auto *weyl = csa->add_subcommand("verify-weyl", "Split certificate for the Weyl algebra mod p");
  pf.add(weyl, "--p", "p", "Prime");
  weyl->callback([&] { command = {"csa", "verify-weyl"}; });
  auto *torsion = csa->add_subcommand("torsion", "Elementary abelian p-subgroups of the Weyl algebra");
  pf.add(torsion, "--p", "p", "Prime");
  pf.add(torsion, "--irreducible", "irreducible", "Use the first m irreducible polynomials");
  torsion->callback([&] { command = {"csa", "torsion"}; });

  auto *quad = app.add_subcommand("quad", "Quadratic forms");
  quad->require_subcommand(1);
  quad->add_subcommand("arf", "Arf normal form in characteristic 2")->callback([&] { command = {"quad", "arf"}; });
  auto *pfister = quad->add_subcommand("pfister", "Pfister form checks and refutations");
  pf.add(pfister, "--k", "k", "Number of parameters (default 3)");
  pf.add(pfister, "--samples", "samples", "Random candidate points (default 100)");
  pf.add(pfister, "--max-degree", "max_degree", "Degree of random candidates (default 3)");
  pfister->callback([&] { command = {"quad", "pfister"}; });
  quad->add_subcommand("extract-isotropic", "Isotropic vector from an isometry of order p")->callback([&] {
    command = {"quad", "extract-isotropic"};
  });

  auto *replay = app.add_subcommand("replay", "Re-verify the worked examples");
  replay->add_option("ids", ids, "Example ids (default: all)");
  replay->callback([&] { command = {"replay"}; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    emit(aniso::cli::error_json(aniso::Error(aniso::ErrorCode::SchemaError, e.what())), flags.compact);
    return 2;
  }

  try {
    Json payload = load_payload(flags);
    if (!payload.is_object()) aniso::fail(aniso::ErrorCode::SchemaError, "$: payload must be a JSON object");
    for (const auto &[key, value] : pf.values)
      if (value) payload[key] = *value;
    if (!types.empty()) payload["types"] = types;
    if (!ids.empty()) payload["ids"] = ids;
    aniso::cli::Options opts{flags.seed, flags.cap};
    Json result = aniso::cli::dispatch(command, payload, opts);
    emit(result, flags.compact);
    if (command[0] == "replay" && result["failed"] != "0") return 1;
    return 0;
  } catch (const aniso::Error &e) {
    emit(aniso::cli::error_json(e), flags.compact);
    return 2;
  } catch (const std::exception &e) {
    emit(aniso::cli::error_json(aniso::Error(aniso::ErrorCode::InternalConsistency, e.what())), flags.compact);
    return 3;
  }
}
