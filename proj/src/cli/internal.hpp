#pragma once

#include "aniso/cli.hpp"

namespace aniso::cli::detail {

struct Checked {
  Json report;
  /// Names of the checks that did not hold.
  std::vector<std::string> failures;
};

Checked pfister_summary(unsigned k, std::size_t samples, unsigned max_degree, std::uint64_t seed);
Checked weyl_summary(long p, std::size_t max_m);
Json torus_analysis(const torus::TorusModel &t, const std::vector<Integer> &ds, const Integer &characteristic);

} // namespace aniso::cli::detail
