#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aniso {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer &z) { return z.get_str(); }
inline std::string to_string(const Rational &q) { return q.get_str(); }

/// Parses "12", "-3" or "5/7"; throws SchemaError on malformed text.
Rational parse_rational(const std::string &text);
Integer parse_integer(const std::string &text);

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Floor-style remainder in [0, |m|).
inline Integer mod(const Integer &a, const Integer &m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline Integer pow(const Integer &base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool divides(const Integer &d, const Integer &n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

bool is_prime(const Integer &n);

/// Trial-division factorization of a positive integer, primes ascending.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer &n);

/// Largest divisor of n coprime to p (p = 0 returns n).
Integer coprime_part(const Integer &n, const Integer &p);

/// Multiplicative inverse of a modulo m; requires gcd(a, m) = 1.
Integer inverse_mod(const Integer &a, const Integer &m);

std::int64_t to_int64(const Integer &z);

} // namespace aniso
