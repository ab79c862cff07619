#pragma once

#include "aniso/error.hpp"
#include "aniso/integer.hpp"
#include "aniso/lattice.hpp"
#include "aniso/pairing.hpp"
#include "aniso/quadform.hpp"
#include "aniso/scalars/field.hpp"
#include "aniso/scalars/matrix.hpp"
#include "aniso/torus.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aniso::cli {

using Json = nlohmann::ordered_json;

/// Name of the environment variable overriding closure caps.
inline constexpr const char *closure_cap_env = "ANISO_CLOSURE_CAP";

struct Options {
  std::uint64_t seed = 0;
  /// Explicit --cap; falls back to the environment, then to each operation's default.
  std::optional<std::size_t> cap;
};

/// cap from the options, else from ANISO_CLOSURE_CAP, else `fallback`.
/// A malformed environment value is a SchemaError.
std::size_t closure_cap(const Options &opts, std::size_t fallback);

Json error_json(const Error &e);

/// Parses payload text; malformed JSON is a SchemaError.
Json parse_payload(const std::string &text);

// Readers. Every failure is a SchemaError naming the JSON path.
Integer read_integer(const Json &j, const std::string &path);
long read_long(const Json &j, const std::string &path);
Rational read_rational(const Json &j, const std::string &path);
scalars::FieldDescriptor read_field(const Json &j, const std::string &path);
/// An expression string, a bare integer, or {"num": {"e1,...,ek": coeff}, "den": {...}}.
scalars::FieldElement read_element(const scalars::FieldDescriptor &f, const Json &j, const std::string &path);
/// {"rows": r, "cols": c, "entries": [[...]]} or a plain list of rows.
lattice::IntMatrix read_int_matrix(const Json &j, const std::string &path);
scalars::FMatrix read_matrix(const scalars::FieldDescriptor &f, const Json &j, const std::string &path);
pairing::AlternatingPairing read_pairing(const Json &j);
/// {"field": ..., "dim": n, "coeffs": {"i,j": element}} with 1-based i <= j.
quadform::QuadraticForm read_form(const Json &j);
torus::TorusModel read_torus(const Json &j, std::size_t cap);

// Writers; integers become decimal strings, rationals "num/den".
Json to_json(const Integer &x);
Json to_json(const Rational &x);
Json to_json(const std::vector<Integer> &v);
Json to_json(const lattice::IntMatrix &m);
Json to_json(const lattice::AbelianGroupStructure &g);
Json to_json(const scalars::FieldElement &x);
Json to_json(const scalars::FMatrix &m);
Json to_json(const std::vector<scalars::FieldElement> &v);
Json to_json(const quadform::QuadraticForm &q);

/// Routes `command` (e.g. {"pairing", "isotropic"}) with its payload.
/// Unknown commands are SchemaErrors.
Json dispatch(const std::vector<std::string> &command, const Json &payload, const Options &opts);

struct ReplayEntry {
  std::string id;
  Json parameters;
  std::string expected;
  bool passed = false;
  std::vector<std::string> diagnostics;
};

/// Registered ids in report order.
std::vector<std::string> replay_ids();

/// Runs the selected entries (all when `filter` is empty). UnknownExampleId
/// for an id that is not registered; exceptions inside an entry mark it failed.
std::vector<ReplayEntry> run_replay(const std::vector<std::string> &filter, const Options &opts);

Json replay_report(const std::vector<ReplayEntry> &entries);

} // namespace aniso::cli
