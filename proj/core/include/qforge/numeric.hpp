#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "qforge/error.hpp"

namespace qf {

using Integer = mpz_class;
// Always kept canonical: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
// mpq_class maintains this invariant as long as values are built through
// the helpers below (never via the raw two-argument constructor).
using Rational = mpq_class;

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) raise(Errc::InvalidArgument, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline const Integer& num(const Rational& r) { return r.get_num(); }
inline const Integer& den(const Rational& r) { return r.get_den(); }

// Parses "a" or "a/b" (optionally signed decimal integers).
Rational parse_rational(const std::string& text);

// Canonical wire form: "num/den" with den omitted when it is 1.
std::string rational_str(const Rational& r);

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 powmod(u64 base, u64 exp, u64 p);

// Deterministic xorshift-style mix; used to derive independent stream seeds
// (e.g. one RNG stream per prime in a sweep) from a master seed.
inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace qf
